#include "frontlab/sensitivity.hpp"

#include <cmath>

#include "frontlab/banded.hpp"
#include "frontlab/errors.hpp"
#include "frontlab/kernels.hpp"
#include "frontlab/scenarios.hpp"

namespace frontlab {

namespace {

Profile dbar_times(const Profile& p, const Mat& Dbar) {
    Profile out(p.grid, p.dim);
    for (int i = 0; i < p.grid.N; ++i) Dbar.apply(p.node(i), out.node(i));
    return out;
}

std::vector<double> interior_of(const Profile& p) {
    std::vector<double> v(static_cast<std::size_t>(p.grid.N - 2) * p.dim);
    std::copy(p.v.begin() + p.dim, p.v.end() - p.dim, v.begin());
    return v;
}

}  // namespace

double cbar_solvency(const FrontSolution& front, const Profile& psi, const Mat& Dbar) {
    const Profile dphi = derivative(front.phi);
    const double norm = l2_inner(psi, dphi);
    if (std::fabs(norm - 1.0) > 1e-6)
        throw ConfigError("cbar_solvency: psi is not normalized, <psi, phi'> = " +
                          std::to_string(norm));
    const Profile d2phi = second_derivative(front.phi);
    const Profile rhs = dbar_times(d2phi, Dbar);
    return -l2_inner(psi, rhs);
}

Profile solve_first_order_profile(const FrontSolution& front, const ReactionModel& model,
                                  const Mat& D, const Mat& Dbar, double cbar,
                                  double* orthogonality_defect, double* residual) {
    const Grid& g = front.phi.grid;
    const int dim = front.phi.dim;
    const int M = (g.N - 2) * dim;

    const OperatorMatrix L = assemble_linearized(front, model, D);
    const Profile dphi = derivative(front.phi);
    const Profile d2phi = second_derivative(front.phi);
    const Profile Dbar_d2 = dbar_times(d2phi, Dbar);

    std::vector<double> col = interior_of(dphi);
    std::vector<double> row(col);
    const double wscale = ip_scale(dim) * g.h;
    for (double& x : row) x *= wscale;

    BorderedSolver solver(L.A, {col}, {row}, {0.0});
    std::vector<double> f(M);
    for (int k = 0; k < M; ++k) {
        const int i = k / dim + 1;
        const int a = k % dim;
        f[k] = -Dbar_d2.at(i, a) - cbar * dphi.at(i, a);
    }
    std::vector<double> x(M), tau(1);
    const double zero = 0.0;
    solver.solve(f, std::span<const double>(&zero, 1), x, tau, 12);

    Profile phibar(g, dim);
    std::copy(x.begin(), x.end(), phibar.v.begin() + dim);

    if (orthogonality_defect != nullptr)
        *orthogonality_defect = std::fabs(l2_inner(dphi, phibar));
    if (residual != nullptr) {
        // RHS compatibility: tau absorbs the component of the right-hand
        // side outside the range of L; it should sit at the cross-expression
        // error level.
        std::vector<double> r(M);
        L.A.matvec(x, r);
        for (int k = 0; k < M; ++k) r[k] -= f[k];
        kernels::axpy(tau[0], col, r);
        *residual = kernels::max_abs(r) + std::fabs(tau[0]);
    }
    return phibar;
}

double cbar_alternative(const FrontSolution& front, const ReactionModel& model,
                        const Profile& phibar) {
    const Profile& phi = front.phi;
    const int N = phi.grid.N;
    const Profile dphi = derivative(phi);
    const Profile d2phi = second_derivative(phi);

    std::vector<double> den(N);
    for (int i = 0; i < N; ++i) {
        double d = 0.0;
        for (int a = 0; a < phi.dim; ++a) d += dphi.at(i, a) * dphi.at(i, a);
        den[i] = d;
    }
    const double nrm2 = trap(den, phi.grid.h);

    double rot_term = 0.0;
    if (phi.dim == 2) {
        const std::vector<double> w = wedge(dphi, phibar);
        std::vector<double> num(N);
        for (int i = 0; i < N; ++i)
            num[i] = rot_f(model, {phi.at(i, 0), phi.at(i, 1)}) * w[i];
        rot_term = trap(num, phi.grid.h);
    }
    std::vector<double> adv(N);
    for (int i = 0; i < N; ++i) {
        double d = 0.0;
        for (int a = 0; a < phi.dim; ++a) d += d2phi.at(i, a) * phibar.at(i, a);
        adv[i] = d;
    }
    const double adv_term = 2.0 * front.speed * trap(adv, phi.grid.h);
    return (rot_term + adv_term) / nrm2;
}

std::pair<double, double> cbar_halfline(const FrontSolution& front, const Profile& psi,
                                        const Profile& phibar, const ReactionModel& model,
                                        const Mat& Dbar) {
    if (!model.has_u1u2_symmetry || model.dim != 2)
        throw HypothesisError("cbar_halfline: model lacks the u1<->u2 exchange symmetry");
    DiffusionSpec spec{Mat::identity(2), Dbar};
    if (!spec.dbar_is_h4())
        throw HypothesisError(
            "cbar_halfline: Dbar does not anticommute with the exchange (needs diag(d, -d))");
    const double sym_front = exchange_symmetry_defect(front.phi, 1.0);
    const double sym_psi = exchange_symmetry_defect(psi, -1.0);
    const double sym_pb = exchange_symmetry_defect(phibar, -1.0);
    const double worst = std::max({sym_front, sym_psi, sym_pb});
    if (worst > 1e-5)
        throw HypothesisError("cbar_halfline: symmetry defect " + std::to_string(worst) +
                              " too large, half-line reduction invalid");

    const Profile& phi = front.phi;
    const int N = phi.grid.N;
    const int mid = phi.grid.mid();
    const double h = phi.grid.h;
    const Profile dphi = derivative(phi);
    const Profile d2phi = second_derivative(phi);
    const Profile Dbar_d2 = dbar_times(d2phi, Dbar);

    std::vector<double> s_int(N), num(N), den(N);
    const std::vector<double> w = wedge(dphi, phibar);
    for (int i = 0; i < N; ++i) {
        double s = 0.0, d = 0.0;
        for (int a = 0; a < 2; ++a) {
            s += psi.at(i, a) * Dbar_d2.at(i, a);
            d += dphi.at(i, a) * dphi.at(i, a);
        }
        s_int[i] = s;
        den[i] = d;
        num[i] = rot_f(model, {phi.at(i, 0), phi.at(i, 1)}) * w[i];
    }
    const double half_s = -2.0 * ip_scale(2) * trap_half(s_int, h, mid);
    const double half_rot = trap_half(num, h, mid) / trap_half(den, h, mid);
    return {half_s, half_rot};
}

SensitivityReport full_report(const ReactionModel& model, const DiffusionSpec& diff,
                              const Grid& grid, const SensitivityOptions& opts) {
    diff.validate();
    SensitivityReport rep;

    const auto states = default_front_states(model);
    const Profile init = default_front_init(model, grid, states.first, states.second);
    try {
        rep.front = model.has_u1u2_symmetry
                        ? solve_standing_front(model, diff.D, grid, init, opts.newton)
                        : solve_travelling_front(model, diff.D, grid, init, 0.0, opts.newton);
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(std::string("full_report: front solve failed: ") + e.what(),
                               e.last_residual);
    }

    std::array<double, 2> em{}, ep{};
    for (int a = 0; a < model.dim; ++a) {
        em[a] = rep.front.phi.at(0, a);
        ep[a] = rep.front.phi.at(grid.N - 1, a);
    }
    const EssentialReport ess = essential_spectrum_check(model, diff.D, em, ep);
    if (!ess.pass)
        throw HypothesisError("full_report: essential spectrum unstable (bound " +
                              std::to_string(ess.bound) + " at k = " +
                              std::to_string(ess.k_worst) + ")");

    const OperatorMatrix Ladj = assemble_adjoint(rep.front, model, diff.D);
    const KernelResult ker = kernel_adjoint(Ladj, rep.front);
    rep.psi = ker.psi;

    rep.cbar_solvency = cbar_solvency(rep.front, rep.psi, diff.Dbar);
    rep.phibar = solve_first_order_profile(rep.front, model, diff.D, diff.Dbar,
                                           rep.cbar_solvency, &rep.orthogonality_defect, nullptr);
    rep.cbar_alternative = cbar_alternative(rep.front, model, rep.phibar);

    if (opts.run_eigen) {
        const OperatorMatrix L = assemble_linearized(rep.front, model, diff.D);
        rep.spectral = zero_multiplicity_and_gap(L, rep.front);
        rep.spectral.essential_bound = ess.bound;
        rep.spectral.h1_pass = ess.pass;
    }

    // symmetry diagnostics and the three even integrands
    if (model.dim == 2) {
        rep.symmetry_defects["front"] = exchange_symmetry_defect(rep.front.phi, 1.0);
        rep.symmetry_defects["psi_antisym"] = exchange_symmetry_defect(rep.psi, -1.0);
        rep.symmetry_defects["phibar_antisym"] = exchange_symmetry_defect(rep.phibar, -1.0);
        const Profile& phi = rep.front.phi;
        const int N = grid.N;
        const Profile dphi = derivative(phi);
        const Profile d2phi = second_derivative(phi);
        const Profile Dbar_d2 = dbar_times(d2phi, diff.Dbar);
        const std::vector<double> w = wedge(dphi, rep.phibar);
        std::vector<double> g1(N), g2(N), g3(N);
        for (int i = 0; i < N; ++i) {
            g1[i] = rep.psi.at(i, 0) * Dbar_d2.at(i, 0) + rep.psi.at(i, 1) * Dbar_d2.at(i, 1);
            g2[i] = dphi.at(i, 0) * dphi.at(i, 0) + dphi.at(i, 1) * dphi.at(i, 1);
            g3[i] = rot_f(model, {phi.at(i, 0), phi.at(i, 1)}) * w[i];
        }
        auto evenness = [N](const std::vector<double>& g) {
            double m = 0.0, scale = 0.0;
            for (int i = 0; i < N; ++i) {
                m = std::max(m, std::fabs(g[i] - g[N - 1 - i]));
                scale = std::max(scale, std::fabs(g[i]));
            }
            return scale > 0.0 ? m / scale : 0.0;
        };
        rep.symmetry_defects["even_solvency_integrand"] = evenness(g1);
        rep.symmetry_defects["even_dphi_sq"] = evenness(g2);
        rep.symmetry_defects["even_rot_integrand"] = evenness(g3);

        DiffusionSpec h4probe{Mat::identity(2), diff.Dbar};
        const double worst = std::max(
            {rep.symmetry_defects["front"], rep.symmetry_defects["psi_antisym"],
             rep.symmetry_defects["phibar_antisym"]});
        if (model.has_u1u2_symmetry && h4probe.dbar_is_h4() && worst <= opts.symmetry_tol) {
            const auto half = cbar_halfline(rep.front, rep.psi, rep.phibar, model, diff.Dbar);
            rep.cbar_halfline_solvency = half.first;
            rep.cbar_halfline_rot = half.second;
            rep.halfline_valid = true;
        }
    }
    return rep;
}

}  // namespace frontlab
