#include "frontlab/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "frontlab/errors.hpp"

namespace frontlab {

std::pair<std::array<double, 2>, std::array<double, 2>> default_front_states(
    const ReactionModel& model) {
    if (model.name == "nagumo") return {{1.0, 0.0}, {0.0, 0.0}};
    if (model.name == "ginzburg_landau_polar")
        throw ConfigError("ginzburg_landau_polar has two front branches; use gl_front_pair");
    return {model.equilibria_list.at(0).u, model.equilibria_list.at(1).u};
}

Grid auto_grid(const ReactionModel& model, const Mat& D) {
    const auto states = default_front_states(model);
    // D^{-1} DF(E) eigenvalue magnitudes set the spatial decay rates.
    Mat Dinv;
    Dinv.dim = D.dim;
    if (D.dim == 1) {
        Dinv.a[0] = 1.0 / D.a[0];
    } else {
        const double det = D(0, 0) * D(1, 1) - D(0, 1) * D(1, 0);
        Dinv(0, 0) = D(1, 1) / det;
        Dinv(1, 1) = D(0, 0) / det;
        Dinv(0, 1) = -D(0, 1) / det;
        Dinv(1, 0) = -D(1, 0) / det;
    }
    double numin = std::numeric_limits<double>::infinity();
    double numax = 0.0;
    for (const auto& e : {states.first, states.second}) {
        const Mat J = eval_jacobian(model, e);
        Mat DJ;
        DJ.dim = D.dim;
        for (int i = 0; i < D.dim; ++i)
            for (int j = 0; j < D.dim; ++j) {
                double s = 0.0;
                for (int k = 0; k < D.dim; ++k) s += Dinv(i, k) * J(k, j);
                DJ(i, j) = s;
            }
        numin = std::min(numin, std::sqrt(DJ.min_abs_eigenvalue()));
        numax = std::max(numax, std::sqrt(DJ.max_abs_eigenvalue()));
    }
    const double L = 24.0 / numin;
    const double h_target = std::min(0.25 / numax, L / 200.0);
    int N = static_cast<int>(std::ceil(2.0 * L / h_target)) + 1;
    if (N % 2 == 0) ++N;
    N = std::min(N, 40001);
    if (N % 2 == 0) ++N;
    return build_grid(L, N);
}

FrontSolution solve_default_front(const ReactionModel& model, const Mat& D, const Grid& grid,
                                  const NewtonOptions& opts) {
    const auto states = default_front_states(model);
    const Profile init = default_front_init(model, grid, states.first, states.second);
    if (model.has_u1u2_symmetry && model.dim == 2)
        return solve_standing_front(model, D, grid, init, opts);
    return solve_travelling_front(model, D, grid, init, 0.0, opts);
}

std::pair<FrontSolution, FrontSolution> gl_front_pair(double eps, double omega, const Grid& grid,
                                                      const NewtonOptions& opts) {
    const ReactionModel model =
        make_model("ginzburg_landau_polar", {{"epsilon", eps}, {"omega", omega}});
    const double e2 = eps * eps;
    auto rstar = [e2](double th) {
        return (-1.0 + std::sqrt(1.0 + e2 * std::cos(2.0 * th))) / e2;
    };
    const double thm = 0.5 * std::asin(omega);
    const Mat D = Mat::identity(2);

    auto solve_branch = [&](double th_left, double th_right) {
        // quasi-static initializer: theta ramps between the phases at the
        // slow rate, r follows its equilibrium value
        const double nu = eps * std::sqrt(2.0 * std::sqrt(1.0 - omega * omega));
        Profile init(grid, 2);
        for (int i = 0; i < grid.N; ++i) {
            const double t = std::tanh(nu * grid.x(i) / 2.0);
            const double th = 0.5 * (th_left + th_right) + 0.5 * (th_right - th_left) * t;
            init.at(i, 0) = rstar(th);
            init.at(i, 1) = th;
        }
        init.at(0, 0) = rstar(th_left);
        init.at(0, 1) = th_left;
        init.at(grid.N - 1, 0) = rstar(th_right);
        init.at(grid.N - 1, 1) = th_right;
        return solve_travelling_front(model, D, grid, init, 0.0, opts);
    };

    return {solve_branch(thm, thm + M_PI), solve_branch(thm, thm - M_PI)};
}

}  // namespace frontlab
