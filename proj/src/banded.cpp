#include "frontlab/banded.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "frontlab/errors.hpp"
#include "frontlab/kernels.hpp"

namespace frontlab {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ld_(2 * kl + ku + 1), a_(static_cast<std::size_t>(n) * ld_, 0.0) {
    assert(n > 0 && kl >= 0 && ku >= 0);
}

double& BandedMatrix::at(int i, int j) {
    assert(i >= 0 && i < n_ && j >= 0 && j < n_ && in_band(i, j));
    return a_[static_cast<std::size_t>(j) * ld_ + kl_ + ku_ + i - j];
}

double BandedMatrix::get(int i, int j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_ || !in_band(i, j)) return 0.0;
    return a_[static_cast<std::size_t>(j) * ld_ + kl_ + ku_ + i - j];
}

void BandedMatrix::matvec(std::span<const double> x, std::span<double> y) const {
    assert(static_cast<int>(x.size()) == n_ && static_cast<int>(y.size()) == n_);
    std::fill(y.begin(), y.end(), 0.0);
    for (int j = 0; j < n_; ++j) {
        const double xj = x[j];
        if (xj == 0.0) continue;
        const int ilo = std::max(0, j - ku_);
        const int ihi = std::min(n_ - 1, j + kl_);
        const double* col = &a_[static_cast<std::size_t>(j) * ld_ + kl_ + ku_ - j];
        kernels::axpy(xj, std::span<const double>(col + ilo, ihi - ilo + 1),
                      std::span<double>(y.data() + ilo, ihi - ilo + 1));
    }
}

BandedMatrix BandedMatrix::transpose() const {
    BandedMatrix T(n_, ku_, kl_);
    for (int j = 0; j < n_; ++j) {
        const int ilo = std::max(0, j - ku_);
        const int ihi = std::min(n_ - 1, j + kl_);
        for (int i = ilo; i <= ihi; ++i) T.at(j, i) = get(i, j);
    }
    return T;
}

BandedLU::BandedLU(const BandedMatrix& A)
    : n_(A.n()), kl_(A.kl()), ku_(A.ku()), ld_(A.ld_), a_(A.a_), ipiv_(A.n()) {
    // Unblocked dgbtrf. Fill from pivoting extends the superdiagonal count to
    // kl+ku; the storage already reserves those rows.
    const int kv = kl_ + ku_;
    auto elem = [&](int i, int j) -> double& {
        return a_[static_cast<std::size_t>(j) * ld_ + kv + i - j];
    };
    min_pivot_ = std::numeric_limits<double>::infinity();
    max_pivot_ = 0.0;
    for (int j = 0; j < n_; ++j) {
        const int pmax = std::min(n_ - 1, j + kl_);
        int p = j;
        double best = std::fabs(elem(j, j));
        for (int i = j + 1; i <= pmax; ++i) {
            const double v = std::fabs(elem(i, j));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        ipiv_[j] = p;
        if (best == 0.0)
            throw SingularMatrixError("banded LU: zero pivot at column " + std::to_string(j),
                                      0.0);
        min_pivot_ = std::min(min_pivot_, best);
        max_pivot_ = std::max(max_pivot_, best);
        const int jhi = std::min(n_ - 1, j + kv);
        if (p != j)
            for (int c = j; c <= jhi; ++c) std::swap(elem(j, c), elem(p, c));
        const double inv = 1.0 / elem(j, j);
        for (int i = j + 1; i <= pmax; ++i) {
            const double m = elem(i, j) * inv;
            elem(i, j) = m;
            if (m != 0.0)
                for (int c = j + 1; c <= jhi; ++c) elem(i, c) -= m * elem(j, c);
        }
    }
}

double BandedLU::pivot_ratio() const { return max_pivot_ > 0.0 ? min_pivot_ / max_pivot_ : 0.0; }

void BandedLU::solve(std::span<double> b) const {
    assert(static_cast<int>(b.size()) == n_);
    const int kv = kl_ + ku_;
    auto elem = [&](int i, int j) -> double {
        return a_[static_cast<std::size_t>(j) * ld_ + kv + i - j];
    };
    for (int j = 0; j < n_; ++j) {
        if (ipiv_[j] != j) std::swap(b[j], b[ipiv_[j]]);
        const int ihi = std::min(n_ - 1, j + kl_);
        const double bj = b[j];
        if (bj != 0.0)
            for (int i = j + 1; i <= ihi; ++i) b[i] -= elem(i, j) * bj;
    }
    for (int j = n_ - 1; j >= 0; --j) {
        double s = b[j];
        for (int c = j + 1; c <= std::min(n_ - 1, j + kv); ++c) s -= elem(j, c) * b[c];
        b[j] = s / elem(j, j);
    }
}

namespace {

void dense_factor(std::vector<double>& m, std::vector<int>& piv, int k, double& det_mag) {
    det_mag = 1.0;
    piv.resize(k);
    for (int j = 0; j < k; ++j) {
        int p = j;
        for (int i = j + 1; i < k; ++i)
            if (std::fabs(m[i * k + j]) > std::fabs(m[p * k + j])) p = i;
        piv[j] = p;
        if (p != j)
            for (int c = 0; c < k; ++c) std::swap(m[j * k + c], m[p * k + c]);
        const double d = m[j * k + j];
        det_mag *= std::fabs(d);
        if (d == 0.0) throw SingularMatrixError("bordered solve: singular Schur complement", 0.0);
        for (int i = j + 1; i < k; ++i) {
            const double f = m[i * k + j] / d;
            m[i * k + j] = f;
            for (int c = j + 1; c < k; ++c) m[i * k + c] -= f * m[j * k + c];
        }
    }
}

void dense_solve(const std::vector<double>& m, const std::vector<int>& piv, int k,
                 std::span<double> b) {
    for (int j = 0; j < k; ++j) {
        if (piv[j] != j) std::swap(b[j], b[piv[j]]);
        for (int i = j + 1; i < k; ++i) b[i] -= m[i * k + j] * b[j];
    }
    for (int j = k - 1; j >= 0; --j) {
        double s = b[j];
        for (int c = j + 1; c < k; ++c) s -= m[j * k + c] * b[c];
        b[j] = s / m[j * k + j];
    }
}

}  // namespace

BorderedSolver::BorderedSolver(BandedMatrix A, std::vector<std::vector<double>> border_cols,
                               std::vector<std::vector<double>> border_rows,
                               std::vector<double> corner)
    : A_(std::move(A)), lu_(A_), cols_(std::move(border_cols)), rows_(std::move(border_rows)),
      corner_(std::move(corner)) {
    const int k = static_cast<int>(cols_.size());
    assert(static_cast<int>(rows_.size()) == k);
    assert(static_cast<int>(corner_.size()) == k * k);
    Ainv_cols_.resize(k);
    for (int c = 0; c < k; ++c) {
        Ainv_cols_[c] = cols_[c];
        lu_.solve(Ainv_cols_[c]);
    }
    schur_.assign(static_cast<std::size_t>(k) * k, 0.0);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c)
            schur_[r * k + c] =
                corner_[r * k + c] - kernels::dot(rows_[r], Ainv_cols_[c]);
    dense_factor(schur_, schur_piv_, k, schur_magnitude_);
}

void BorderedSolver::solve_once(std::span<const double> f, std::span<const double> g,
                                std::span<double> x, std::span<double> y) const {
    const int k = this->k();
    std::copy(f.begin(), f.end(), x.begin());
    lu_.solve(x);
    for (int r = 0; r < k; ++r) y[r] = g[r] - kernels::dot(rows_[r], std::span<const double>(x));
    dense_solve(schur_, schur_piv_, k, y);
    for (int c = 0; c < k; ++c) kernels::axpy(-y[c], Ainv_cols_[c], x);
}

void BorderedSolver::solve(std::span<const double> f, std::span<const double> g,
                           std::span<double> x, std::span<double> y, int refine) const {
    const int n = this->n();
    const int k = this->k();
    solve_once(f, g, x, y);
    if (refine <= 0) return;
    // Iterative refinement on the full bordered residual. When A is nearly
    // singular the block elimination alone loses accuracy; each pass
    // contracts the error by ~eps * cond(A), so run until the residual
    // stops improving.
    std::vector<double> rf(n), rg(std::max(1, k)), dx(n), dy(std::max(1, k));
    double prev = std::numeric_limits<double>::infinity();
    for (int pass = 0; pass < refine; ++pass) {
        A_.matvec(x, rf);
        for (int c = 0; c < k; ++c) kernels::axpy(y[c], cols_[c], rf);
        for (int i = 0; i < n; ++i) rf[i] = f[i] - rf[i];
        double rnorm = kernels::max_abs(rf);
        for (int r = 0; r < k; ++r) {
            double s = kernels::dot(rows_[r], std::span<const double>(x));
            for (int c = 0; c < k; ++c) s += corner_[r * k + c] * y[c];
            rg[r] = g[r] - s;
            rnorm = std::max(rnorm, std::fabs(rg[r]));
        }
        if (rnorm == 0.0 || rnorm >= prev) break;
        prev = rnorm;
        solve_once(rf, std::span<const double>(rg.data(), k), dx,
                   std::span<double>(dy.data(), std::max(1, k)));
        kernels::axpy(1.0, dx, x);
        for (int c = 0; c < k; ++c) y[c] += dy[c];
    }
}

}  // namespace frontlab
