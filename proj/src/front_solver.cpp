#include "frontlab/front_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "frontlab/banded.hpp"
#include "frontlab/errors.hpp"
#include "frontlab/kernels.hpp"

namespace frontlab {

namespace {

std::string fmt_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

enum class Constraint { phase, pin_longitudinal };

struct Workspace {
    const ReactionModel& model;
    Mat D;
    Grid grid;
    int dim;
    std::array<double, 2> left{}, right{};

    int unknowns() const { return grid.N * dim; }

    // residual r_i = F(u_i[, u_i']) + D u_i'' + c u_i' at interior nodes;
    // boundary rows are u - E.
    void residual(const Profile& u, double c, std::vector<double>& r,
                  std::vector<double>& du) const {
        const int N = grid.N;
        const double inv2h = 1.0 / (2.0 * grid.h);
        const double invh2 = 1.0 / (grid.h * grid.h);
        r.assign(static_cast<std::size_t>(N) * dim, 0.0);
        du.assign(static_cast<std::size_t>(N) * dim, 0.0);
        kernels::centered_difference(u.v, dim, inv2h, du);
        std::vector<double> d2(static_cast<std::size_t>(N) * dim);
        kernels::second_difference(u.v, dim, invh2, d2);
        double f[2], Dd2[2];
        for (int i = 1; i < N - 1; ++i) {
            model.react(u.node(i), &du[static_cast<std::size_t>(i) * dim], f);
            D.apply(&d2[static_cast<std::size_t>(i) * dim], Dd2);
            for (int a = 0; a < dim; ++a)
                r[static_cast<std::size_t>(i) * dim + a] =
                    f[a] + Dd2[a] + c * du[static_cast<std::size_t>(i) * dim + a];
        }
        for (int a = 0; a < dim; ++a) {
            r[a] = u.at(0, a) - left[a];
            r[static_cast<std::size_t>(N - 1) * dim + a] = u.at(N - 1, a) - right[a];
        }
    }

    BandedMatrix jacobian(const Profile& u, double c, const std::vector<double>& du) const {
        const int N = grid.N;
        const int band = 2 * dim - 1;
        BandedMatrix J(N * dim, band, band);
        const double inv2h = 1.0 / (2.0 * grid.h);
        const double invh2 = 1.0 / (grid.h * grid.h);
        double ju[4], jux[4];
        for (int i = 1; i < N - 1; ++i) {
            model.jacobian(u.node(i), &du[static_cast<std::size_t>(i) * dim], ju, jux);
            for (int a = 0; a < dim; ++a) {
                const int row = i * dim + a;
                for (int b = 0; b < dim; ++b) {
                    J.add(row, i * dim + b, ju[a * dim + b]);
                    J.add(row, (i - 1) * dim + b, D(a, b) * invh2);
                    J.add(row, i * dim + b, -2.0 * D(a, b) * invh2);
                    J.add(row, (i + 1) * dim + b, D(a, b) * invh2);
                    if (model.gradient_coupled) {
                        J.add(row, (i - 1) * dim + b, -jux[a * dim + b] * inv2h);
                        J.add(row, (i + 1) * dim + b, jux[a * dim + b] * inv2h);
                    }
                }
                J.add(row, (i - 1) * dim + a, -c * inv2h);
                J.add(row, (i + 1) * dim + a, c * inv2h);
            }
        }
        for (int a = 0; a < dim; ++a) {
            J.at(a, a) = 1.0;
            J.at((N - 1) * dim + a, (N - 1) * dim + a) = 1.0;
        }
        return J;
    }
};

double scaled_norm(const std::vector<double>& r, const Profile& u) {
    return kernels::max_abs(r) / (1.0 + kernels::max_abs(u.v));
}

FrontSolution newton_front(const ReactionModel& model, const Mat& D, const Grid& grid,
                           const Profile& init, double c_init, Constraint kind,
                           const NewtonOptions& opts) {
    Workspace ws{model, D, grid, model.dim, {}, {}};
    const int N = grid.N;
    const int dim = model.dim;
    const int n = N * dim;
    for (int a = 0; a < dim; ++a) {
        ws.left[a] = init.at(0, a);
        ws.right[a] = init.at(N - 1, a);
    }

    Profile u = init;
    double c = c_init;
    const Profile uref = init;
    const Profile upref = derivative(uref);

    // The centered stencils cannot resolve residuals below ~eps/h^2; cap the
    // requested tolerance at that floor so fine grids do not spin forever.
    double dmax = 0.0;
    for (int a = 0; a < dim; ++a) {
        double s = 0.0;
        for (int b = 0; b < dim; ++b) s += std::fabs(D(a, b));
        dmax = std::max(dmax, s);
    }
    const double tol = std::max(opts.tol, 4.0 * std::numeric_limits<double>::epsilon() *
                                              std::max(1.0, dmax) / (grid.h * grid.h));

    std::vector<double> r, du;
    std::vector<double> rt, dut;
    std::vector<double> x(n), y(1);
    ws.residual(u, c, r, du);
    double norm = scaled_norm(r, u);

    auto constraint_value = [&](const Profile& uu) {
        if (kind == Constraint::pin_longitudinal) return -uu.at(grid.mid(), 0) + uu.at(grid.mid(), 1);
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += upref.v[k] * (uu.v[k] - uref.v[k]);
        return s;
    };

    int it = 0;
    for (; it < opts.max_iter; ++it) {
        if (norm <= tol) break;
        BandedMatrix J = ws.jacobian(u, c, du);
        // bordered with the speed column d r / d c = phi' and the scalar
        // constraint row
        std::vector<double> col(du);
        for (int a = 0; a < dim; ++a) {
            col[a] = 0.0;
            col[static_cast<std::size_t>(N - 1) * dim + a] = 0.0;
        }
        std::vector<double> row(n, 0.0);
        if (kind == Constraint::pin_longitudinal) {
            row[static_cast<std::size_t>(grid.mid()) * dim + 0] = -1.0;
            row[static_cast<std::size_t>(grid.mid()) * dim + 1] = 1.0;
        } else {
            row = upref.v;
        }
        BorderedSolver solver(std::move(J), {col}, {row}, {0.0});
        if (solver.schur_magnitude() < 1e-14)
            throw SingularMatrixError(
                "front solve: singular bordered Jacobian (schur magnitude " +
                    std::to_string(solver.schur_magnitude()) + ", pivot ratio " +
                    std::to_string(solver.pivot_ratio()) + ")",
                solver.pivot_ratio());
        std::vector<double> f(n);
        for (int k = 0; k < n; ++k) f[k] = -r[k];
        const double g = -constraint_value(u);
        solver.solve(f, std::span<const double>(&g, 1), x, y);

        // damped update: halve until the residual norm decreases
        double step = 1.0;
        Profile ut = u;
        double ct = c;
        double new_norm = norm;
        for (int ls = 0; ls <= opts.max_linesearch; ++ls) {
            ut.v = u.v;
            for (int k = 0; k < n; ++k) ut.v[k] += step * x[k];
            ct = c + step * y[0];
            ws.residual(ut, ct, rt, dut);
            new_norm = scaled_norm(rt, ut);
            if (new_norm < norm || norm <= tol) break;
            step /= 2.0;
        }
        u.v.swap(ut.v);
        c = ct;
        r.swap(rt);
        du.swap(dut);
        norm = new_norm;
    }
    if (norm > tol)
        throw ConvergenceError("front solve: Newton did not reach tolerance " + fmt_sci(tol) +
                                   " in " + std::to_string(opts.max_iter) +
                                   " iterations (last scaled residual " + fmt_sci(norm) + ")",
                               norm);

    FrontSolution sol;
    sol.phi = std::move(u);
    sol.speed = c;
    sol.residual_norm = norm;

    // boundary defect over the outer 5% of nodes
    const int tail = std::max(1, N / 20);
    double bd = 0.0;
    for (int i = 0; i < tail; ++i)
        for (int a = 0; a < dim; ++a) {
            bd = std::max(bd, std::fabs(sol.phi.at(i, a) - ws.left[a]));
            bd = std::max(bd, std::fabs(sol.phi.at(N - 1 - i, a) - ws.right[a]));
        }
    sol.boundary_defect = bd;
    if (model.has_u1u2_symmetry && dim == 2)
        sol.symmetry_defect = exchange_symmetry_defect(sol.phi, 1.0);

    const std::string capture = detect_saddle_capture(model, sol.phi);
    if (!capture.empty()) sol.warnings.push_back("saddle_branch_capture:" + capture);
    return sol;
}

}  // namespace

Profile default_front_init(const ReactionModel& model, const Grid& grid,
                           const std::array<double, 2>& left, const std::array<double, 2>& right) {
    Profile p(grid, model.dim);
    for (int i = 0; i < grid.N; ++i) {
        const double t = std::tanh(grid.x(i) / 2.0);
        for (int a = 0; a < model.dim; ++a)
            p.at(i, a) = 0.5 * (left[a] + right[a]) + 0.5 * (right[a] - left[a]) * t;
    }
    for (int a = 0; a < model.dim; ++a) {
        p.at(0, a) = left[a];
        p.at(grid.N - 1, a) = right[a];
    }
    return p;
}

FrontSolution solve_travelling_front(const ReactionModel& model, const Mat& D, const Grid& grid,
                                     const Profile& init, double c_init,
                                     const NewtonOptions& opts) {
    return newton_front(model, D, grid, init, c_init, Constraint::phase, opts);
}

FrontSolution solve_standing_front(const ReactionModel& model, const Mat& D, const Grid& grid,
                                   const Profile& init, const NewtonOptions& opts) {
    if (model.dim != 2)
        throw ConfigError("solve_standing_front: requires a two-component model");
    return newton_front(model, D, grid, init, 0.0, Constraint::pin_longitudinal, opts);
}

double front_speed_quadrature(const ReactionModel& model, const FrontSolution& front) {
    const Profile& phi = front.phi;
    const Profile dphi = derivative(phi);
    const int N = phi.grid.N;
    const int dim = phi.dim;
    std::vector<double> num(N), den(N);
    double f[2];
    for (int i = 0; i < N; ++i) {
        model.react(phi.node(i), dphi.node(i), f);
        double s = 0.0, d = 0.0;
        for (int a = 0; a < dim; ++a) {
            s += f[a] * dphi.at(i, a);
            d += dphi.at(i, a) * dphi.at(i, a);
        }
        num[i] = s;
        den[i] = d;
    }
    const double nrm2 = trap(den, phi.grid.h);
    if (nrm2 < 1e-14)
        throw ConfigError("front_speed_quadrature: degenerate (constant) profile");
    return -trap(num, phi.grid.h) / nrm2;
}

std::vector<FrontSolution> continue_in_parameter(const ReactionModel& model, const Mat& D,
                                                 const Grid& grid,
                                                 const std::string& param_name,
                                                 const std::vector<double>& values,
                                                 const NewtonOptions& opts) {
    std::vector<FrontSolution> out;
    out.reserve(values.size());
    const Profile* seed = nullptr;
    for (double v : values) {
        auto params = model.params;
        if (param_name == "eps") params.erase("mu");
        if (param_name == "mu") params.erase("eps");
        params[param_name] = v;
        const ReactionModel m = make_model(model.name, params);
        Profile init =
            seed != nullptr
                ? *seed
                : default_front_init(m, grid, m.equilibria_list.at(0).u, m.equilibria_list.at(1).u);
        if (seed != nullptr) {
            // keep the previous interior, clamp ends to the new equilibria
            for (int a = 0; a < m.dim; ++a) {
                init.at(0, a) = m.equilibria_list.at(0).u[a];
                init.at(grid.N - 1, a) = m.equilibria_list.at(1).u[a];
            }
        }
        try {
            FrontSolution sol = m.has_u1u2_symmetry
                                    ? solve_standing_front(m, D, grid, init, opts)
                                    : solve_travelling_front(m, D, grid, init, 0.0, opts);
            out.push_back(std::move(sol));
            seed = &out.back().phi;
        } catch (const ConvergenceError& e) {
            throw ConvergenceError("continuation halted at " + param_name + " = " +
                                       std::to_string(v) + ": " + e.what(),
                                   e.last_residual);
        }
    }
    return out;
}

std::string detect_saddle_capture(const ReactionModel& model, const Profile& phi) {
    const int N = phi.grid.N;
    for (const auto& e : equilibria(model)) {
        if (e.stability != Stability::saddle) continue;
        const int q1 = N / 4, q2 = 3 * N / 4;
        double d1 = 0.0, d2 = 0.0;
        for (int a = 0; a < phi.dim; ++a) {
            d1 = std::max(d1, std::fabs(phi.at(q1, a) - e.u[a]));
            d2 = std::max(d2, std::fabs(phi.at(q2, a) - e.u[a]));
        }
        if (d1 < 0.05 && d2 < 0.05) return e.label;
    }
    return "";
}

bool longitudinally_monotone(const FrontSolution& front) {
    const Profile& p = front.phi;
    if (p.dim != 2) return true;
    double prev = -p.at(0, 0) + p.at(0, 1);
    for (int i = 1; i < p.grid.N; ++i) {
        const double vl = -p.at(i, 0) + p.at(i, 1);
        if (vl < prev - 1e-10) return false;
        prev = vl;
    }
    return true;
}

double front_residual_norm(const ReactionModel& model, const Mat& D, const FrontSolution& front) {
    Workspace ws{model, D, front.phi.grid, front.phi.dim, {}, {}};
    for (int a = 0; a < front.phi.dim; ++a) {
        ws.left[a] = front.phi.at(0, a);
        ws.right[a] = front.phi.at(front.phi.grid.N - 1, a);
    }
    std::vector<double> r, du;
    ws.residual(front.phi, front.speed, r, du);
    return kernels::max_abs(r);
}

}  // namespace frontlab
