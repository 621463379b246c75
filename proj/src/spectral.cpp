#include "frontlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "frontlab/errors.hpp"
#include "frontlab/kernels.hpp"

namespace frontlab {

namespace {

// Interior node ii in [1, N-2] maps to block k = ii-1.
std::vector<double> interior_of(const Profile& p) {
    const int dim = p.dim;
    std::vector<double> v(static_cast<std::size_t>(p.grid.N - 2) * dim);
    std::copy(p.v.begin() + dim, p.v.end() - dim, v.begin());
    return v;
}

Profile embed_interior(const Grid& g, int dim, std::span<const double> v) {
    Profile p(g, dim);
    std::copy(v.begin(), v.end(), p.v.begin() + dim);
    return p;
}

OperatorMatrix assemble(const FrontSolution& front, const ReactionModel& model, const Mat& D,
                        bool adjoint) {
    const Grid& g = front.phi.grid;
    const int N = g.N;
    const int dim = model.dim;
    const int M = (N - 2) * dim;
    const int band = 2 * dim - 1;
    const double inv2h = 1.0 / (2.0 * g.h);
    const double invh2 = 1.0 / (g.h * g.h);
    const double c = front.speed;
    const Profile dphi = derivative(front.phi);

    OperatorMatrix op{BandedMatrix(M, band, band),
                      adjoint ? OperatorMatrix::Role::adjoint : OperatorMatrix::Role::linearized,
                      N, dim, c, g};
    BandedMatrix& A = op.A;

    const std::size_t dd = static_cast<std::size_t>(dim) * dim;
    std::vector<double> ju(static_cast<std::size_t>(N) * dd);
    std::vector<double> jux(static_cast<std::size_t>(N) * dd);
    for (int i = 1; i < N - 1; ++i)
        model.jacobian(front.phi.node(i), dphi.node(i), &ju[i * dd], &jux[i * dd]);

    for (int i = 1; i < N - 1; ++i) {
        const int k = i - 1;
        for (int a = 0; a < dim; ++a) {
            const int row = k * dim + a;
            for (int b = 0; b < dim; ++b) {
                const double jab = adjoint ? ju[i * dd + b * dim + a] : ju[i * dd + a * dim + b];
                A.add(row, k * dim + b, jab - 2.0 * D(a, b) * invh2);
                if (k > 0) A.add(row, (k - 1) * dim + b, D(a, b) * invh2);
                if (k < N - 3) A.add(row, (k + 1) * dim + b, D(a, b) * invh2);
                if (model.gradient_coupled) {
                    // gradient coupling B(x) d/dx; its discrete adjoint is the
                    // algebraic transpose, which reads the neighbor's block.
                    if (!adjoint) {
                        if (k > 0) A.add(row, (k - 1) * dim + b, -jux[i * dd + a * dim + b] * inv2h);
                        if (k < N - 3)
                            A.add(row, (k + 1) * dim + b, jux[i * dd + a * dim + b] * inv2h);
                    } else {
                        if (k > 0)
                            A.add(row, (k - 1) * dim + b, jux[(i - 1) * dd + b * dim + a] * inv2h);
                        if (k < N - 3)
                            A.add(row, (k + 1) * dim + b, -jux[(i + 1) * dd + b * dim + a] * inv2h);
                    }
                }
            }
            const double adv = adjoint ? -c : c;
            if (k > 0) A.add(row, (k - 1) * dim + a, -adv * inv2h);
            if (k < N - 3) A.add(row, (k + 1) * dim + a, adv * inv2h);
        }
    }
    return op;
}

struct EigenPair {
    double lambda = 0.0;
    std::vector<double> v;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

double norm2(std::span<const double> v) { return std::sqrt(kernels::dot(v, v)); }

void normalize(std::vector<double>& v) {
    const double n = norm2(v);
    if (n > 0.0)
        for (double& x : v) x /= n;
}

// Inverse iteration with shift 0, deflated against previously found pairs
// through a bordered solve: border rows hold left vectors, columns right
// vectors, so each solve applies the inverse restricted to the complement of
// the found invariant subspace.
EigenPair deflated_inverse_iteration(const BandedMatrix& A,
                                     const std::vector<std::vector<double>>& right_found,
                                     const std::vector<std::vector<double>>& left_found,
                                     unsigned long long seed, int max_iter = 200) {
    const int n = A.n();
    const int k = static_cast<int>(right_found.size());
    EigenPair out;
    BorderedSolver solver(A, right_found, left_found,
                          std::vector<double>(static_cast<std::size_t>(k) * k, 0.0));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    normalize(v);

    const std::vector<double> g(std::max(1, k), 0.0);
    std::vector<double> w(n), y(std::max(1, k)), Av(n), r(n);
    for (int it = 0; it < max_iter; ++it) {
        out.iterations = it + 1;
        solver.solve(v, std::span<const double>(g.data(), k), w,
                     std::span<double>(y.data(), std::max<std::size_t>(1, k)), 1);
        normalize(w);
        if (kernels::dot(w, v) < 0.0)
            for (double& x : w) x = -x;
        double delta = 0.0;
        for (int i = 0; i < n; ++i) delta = std::max(delta, std::fabs(w[i] - v[i]));
        A.matvec(w, Av);
        out.lambda = kernels::dot(w, Av);
        r = Av;
        kernels::axpy(-out.lambda, w, r);
        for (int j = 0; j < k; ++j) {
            const double comp =
                kernels::dot(left_found[j], r) / kernels::dot(left_found[j], right_found[j]);
            kernels::axpy(-comp, right_found[j], r);
        }
        out.residual = norm2(r);
        v.swap(w);
        if (delta < 1e-12 || out.residual < 1e-11 * std::max(1.0, std::fabs(out.lambda))) {
            out.converged = true;
            break;
        }
    }
    out.v = std::move(v);
    return out;
}

// Fallback when a deflated iteration cycles (complex pair): extract the
// 2-dimensional invariant subspace spanned by {v, A v} and report the pair's
// real part and magnitude from the projected 2x2 matrix.
void two_dim_estimate(const BandedMatrix& A, const std::vector<double>& v, double& real_part,
                      double& magnitude) {
    const int n = A.n();
    std::vector<double> q1 = v;
    normalize(q1);
    std::vector<double> q2(n);
    A.matvec(q1, q2);
    const double h11 = kernels::dot(q1, q2);
    kernels::axpy(-h11, q1, q2);
    const double h21 = norm2(q2);
    if (h21 > 0.0)
        for (double& x : q2) x /= h21;
    std::vector<double> Aq2(n);
    A.matvec(q2, Aq2);
    const double h12 = kernels::dot(q1, Aq2);
    const double h22 = kernels::dot(q2, Aq2);
    const double tr = h11 + h22;
    const double det = h11 * h22 - h12 * h21;
    const double disc = tr * tr / 4.0 - det;
    if (disc >= 0.0) {
        const double rt = std::sqrt(disc);
        const double l1 = tr / 2.0 + rt, l2 = tr / 2.0 - rt;
        real_part = std::fabs(l1) < std::fabs(l2) ? l1 : l2;
        magnitude = std::min(std::fabs(l1), std::fabs(l2));
    } else {
        real_part = tr / 2.0;
        magnitude = std::sqrt(det);
    }
}

}  // namespace

OperatorMatrix assemble_linearized(const FrontSolution& front, const ReactionModel& model,
                                   const Mat& D) {
    return assemble(front, model, D, false);
}

OperatorMatrix assemble_adjoint(const FrontSolution& front, const ReactionModel& model,
                                const Mat& D) {
    return assemble(front, model, D, true);
}

Profile apply_operator(const OperatorMatrix& op, const Profile& p) {
    std::vector<double> x = interior_of(p);
    std::vector<double> y(x.size());
    op.A.matvec(x, y);
    return embed_interior(op.grid, op.dim, y);
}

EssentialReport essential_spectrum_check(const ReactionModel& model, const Mat& D,
                                         const std::array<double, 2>& e_minus,
                                         const std::array<double, 2>& e_plus, double k_max,
                                         int k_samples) {
    EssentialReport rep;
    const Mat Jm = eval_jacobian(model, e_minus);
    const Mat Jp = eval_jacobian(model, e_plus);
    if (k_max <= 0.0) {
        double gersh = 0.0;
        for (const Mat* J : {&Jm, &Jp}) {
            for (int i = 0; i < model.dim; ++i) {
                double row = 0.0;
                for (int j = 0; j < model.dim; ++j) row += std::fabs((*J)(i, j));
                gersh = std::max(gersh, row);
            }
        }
        double dmin;
        if (D.dim == 1) {
            dmin = D.a[0];
        } else {
            const double tr = D(0, 0) + D(1, 1);
            const double det = D(0, 0) * D(1, 1) - D(0, 1) * D(1, 0);
            const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
            dmin = tr / 2.0 - disc;
        }
        k_max = 2.0 * std::sqrt(std::max(1e-30, gersh / dmin));
    }
    rep.k_max = k_max;
    rep.bound = -std::numeric_limits<double>::infinity();
    for (int s = 0; s <= k_samples; ++s) {
        const double k = k_max * static_cast<double>(s) / k_samples;
        for (const Mat* J : {&Jm, &Jp}) {
            const Mat Mk = J->plus_scaled(D, -k * k);
            const double re = Mk.max_real_eigenvalue();
            if (re > rep.bound) {
                rep.bound = re;
                rep.k_worst = k;
            }
        }
    }
    rep.pass = rep.bound < 1e-12;
    return rep;
}

KernelResult kernel_adjoint(const OperatorMatrix& adjoint_op, const FrontSolution& front) {
    if (adjoint_op.role != OperatorMatrix::Role::adjoint)
        throw ConfigError("kernel_adjoint: operator must be the adjoint assembly");
    const int dim = adjoint_op.dim;
    const Grid& g = adjoint_op.grid;
    const int M = adjoint_op.A.n();

    const Profile dphi = derivative(front.phi);
    std::vector<double> col = interior_of(dphi);
    std::vector<double> row(col);
    const double wscale = ip_scale(dim) * g.h;
    for (double& x : row) x *= wscale;

    KernelResult res;

    // Raw kernel direction by shifted inverse iteration (shift 0), from a
    // fixed seed vector.
    {
        BandedLU lu(adjoint_op.A);
        std::mt19937_64 rng(4242);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<double> z1(M);
        for (double& x : z1) x = dist(rng);
        normalize(z1);
        lu.solve(z1);
        normalize(z1);
        std::vector<double> z2 = z1;
        lu.solve(z2);
        normalize(z2);
        const double settle = std::fabs(kernels::dot(z1, z2));
        if (1.0 - settle > 1e-9)
            res.warnings.push_back(
                "kernel_adjoint: inverse iteration stagnation, possible multiplicity > 1 "
                "(direction drift " +
                std::to_string(1.0 - settle) + ")");
        const double align = std::fabs(kernels::dot(z2, col)) /
                             norm2(std::span<const double>(col));
        if (align < 1e-8)
            throw HypothesisError(
                "kernel_adjoint: raw kernel is orthogonal to phi' (alignment " +
                std::to_string(align) + "); zero eigenvalue not simple");
    }

    BorderedSolver solver(adjoint_op.A, {col}, {row}, {0.0});
    std::vector<double> psi(M), tau(1);
    const std::vector<double> zero(M, 0.0);
    double one = 1.0;
    solver.solve(zero, std::span<const double>(&one, 1), psi, tau, 12);
    res.tau = tau[0];

    res.psi = embed_interior(g, dim, psi);
    std::vector<double> r(M);
    adjoint_op.A.matvec(psi, r);
    res.residual = kernels::max_abs(r);
    res.normalization = l2_inner(res.psi, dphi);
    if (std::fabs(res.normalization - 1.0) > 1e-6)
        throw HypothesisError("kernel_adjoint: normalization <psi, phi'> = 1 failed (got " +
                              std::to_string(res.normalization) + ")");
    return res;
}

SpectralReport zero_multiplicity_and_gap(const OperatorMatrix& op, const FrontSolution& front) {
    SpectralReport rep;
    rep.essential_bound = std::numeric_limits<double>::quiet_NaN();
    const BandedMatrix& L = op.A;
    const BandedMatrix LT = L.transpose();

    const EigenPair v0 = deflated_inverse_iteration(L, {}, {}, 101);
    const EigenPair w0 = deflated_inverse_iteration(LT, {}, {}, 102);
    rep.iterations = v0.iterations + w0.iterations;
    if (!v0.converged || !w0.converged)
        throw ConvergenceError(
            "zero_multiplicity_and_gap: inverse iteration for the near-zero eigenvalue did not "
            "converge (" +
                std::to_string(rep.iterations) + " iterations, residual " +
                std::to_string(std::max(v0.residual, w0.residual)) + ")",
            std::max(v0.residual, w0.residual));

    std::vector<double> Av(L.n());
    L.matvec(v0.v, Av);
    rep.zero_eig_estimate = kernels::dot(w0.v, Av) / kernels::dot(w0.v, v0.v);

    const Profile dphi = derivative(front.phi);
    const std::vector<double> dphiI = interior_of(dphi);
    const double cosang =
        kernels::dot(v0.v, dphiI) / (norm2(v0.v) * norm2(std::span<const double>(dphiI)));
    rep.kernel_angle = std::sqrt(std::max(0.0, 1.0 - cosang * cosang));

    EigenPair v1 = deflated_inverse_iteration(L, {v0.v}, {w0.v}, 103);
    rep.iterations += v1.iterations;
    double l1_re = v1.lambda, l1_mag = std::fabs(v1.lambda);
    if (!v1.converged) {
        two_dim_estimate(L, v1.v, l1_re, l1_mag);
        rep.eigen_converged = false;
    }

    double l2_re = l1_re;
    if (v1.converged) {
        const EigenPair w1 = deflated_inverse_iteration(LT, {w0.v}, {v0.v}, 104);
        rep.iterations += w1.iterations;
        if (w1.converged) {
            EigenPair v2 = deflated_inverse_iteration(L, {v0.v, v1.v}, {w0.v, w1.v}, 105);
            rep.iterations += v2.iterations;
            if (v2.converged) {
                l2_re = v2.lambda;
            } else {
                double mag;
                two_dim_estimate(L, v2.v, l2_re, mag);
            }
        }
    }

    rep.spectral_gap = l1_mag;
    rep.rightmost_nonzero_real_part = std::max(l1_re, l2_re);
    rep.h2_pass = std::fabs(rep.zero_eig_estimate) < SpectralReport::gap_tol * rep.spectral_gap;
    rep.stable_pass = rep.rightmost_nonzero_real_part < 0.0;
    return rep;
}

SpectralReport spectral_report(const ReactionModel& model, const Mat& D,
                               const FrontSolution& front) {
    std::array<double, 2> em{}, ep{};
    for (int a = 0; a < model.dim; ++a) {
        em[a] = front.phi.at(0, a);
        ep[a] = front.phi.at(front.phi.grid.N - 1, a);
    }
    const EssentialReport ess = essential_spectrum_check(model, D, em, ep);
    const OperatorMatrix L = assemble_linearized(front, model, D);
    SpectralReport rep = zero_multiplicity_and_gap(L, front);
    rep.essential_bound = ess.bound;
    rep.h1_pass = ess.pass;
    return rep;
}

}  // namespace frontlab
