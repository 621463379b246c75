#pragma once

#include <span>
#include <vector>

namespace frontlab {

/// Square banded matrix with kl sub- and ku super-diagonals, stored
/// LAPACK-style per column with kl spare rows for pivoting fill.
class BandedMatrix {
public:
    BandedMatrix(int n, int kl, int ku);

    int n() const { return n_; }
    int kl() const { return kl_; }
    int ku() const { return ku_; }

    bool in_band(int i, int j) const { return i - j <= kl_ && j - i <= ku_; }

    double& at(int i, int j);
    double get(int i, int j) const;
    void add(int i, int j, double v) { at(i, j) += v; }

    /// y = A x
    void matvec(std::span<const double> x, std::span<double> y) const;
    BandedMatrix transpose() const;

private:
    friend class BandedLU;
    int n_, kl_, ku_, ld_;
    std::vector<double> a_;  // a_[j*ld_ + kl_ + ku_ + i - j]
};

/// LU factorization with partial pivoting of a banded matrix.
class BandedLU {
public:
    explicit BandedLU(const BandedMatrix& A);

    void solve(std::span<double> b) const;  // in place
    double min_pivot() const { return min_pivot_; }
    double max_pivot() const { return max_pivot_; }
    /// |smallest pivot| / |largest pivot|; crude inverse-condition signal.
    double pivot_ratio() const;

private:
    int n_, kl_, ku_, ld_;
    std::vector<double> a_;
    std::vector<int> ipiv_;
    double min_pivot_ = 0.0, max_pivot_ = 0.0;
};

/// Solver for [A B; C D] [x; y] = [f; g] with banded A and a thin border
/// (k columns B, k rows C, small dense D). Block elimination through the LU
/// of A followed by iterative refinement on the full bordered residual, so
/// the solve stays accurate when A is nearly singular but the bordered
/// matrix is well conditioned.
class BorderedSolver {
public:
    BorderedSolver(BandedMatrix A, std::vector<std::vector<double>> border_cols,
                   std::vector<std::vector<double>> border_rows,
                   std::vector<double> corner /* k*k row-major */);

    int n() const { return A_.n(); }
    int k() const { return static_cast<int>(cols_.size()); }

    void solve(std::span<const double> f, std::span<const double> g, std::span<double> x,
               std::span<double> y, int refine = 2) const;

    /// |det S| of the k x k Schur complement; near zero means the border
    /// fails to regularize A.
    double schur_magnitude() const { return schur_magnitude_; }
    double pivot_ratio() const { return lu_.pivot_ratio(); }

private:
    void solve_once(std::span<const double> f, std::span<const double> g, std::span<double> x,
                    std::span<double> y) const;

    BandedMatrix A_;
    BandedLU lu_;
    std::vector<std::vector<double>> cols_, rows_;
    std::vector<double> corner_;
    std::vector<std::vector<double>> Ainv_cols_;  // A^{-1} B
    std::vector<double> schur_;                   // D - C A^{-1} B, factored dense
    std::vector<int> schur_piv_;
    double schur_magnitude_ = 0.0;
};

}  // namespace frontlab
