#include "frontlab/pde_sim.hpp"

#include <algorithm>
#include <cmath>

#include "frontlab/errors.hpp"
#include "frontlab/kernels.hpp"

namespace frontlab {

namespace {

double max_jacobian_eig(const ReactionModel& model, const Profile& u) {
    double m = 0.0;
    double ju[4], jux[4];
    const double ux[2] = {0.0, 0.0};
    for (int i = 0; i < u.grid.N; ++i) {
        model.jacobian(u.node(i), ux, ju, jux);
        Mat J;
        J.dim = u.dim;
        std::copy(ju, ju + u.dim * u.dim, J.a.begin());
        m = std::max(m, J.max_abs_eigenvalue());
    }
    return m;
}

}  // namespace

SimState::SimState(const ReactionModel& model, const Mat& D_eff, const Grid& grid,
                   const Profile& init, double dt)
    : model_(model), D_(D_eff), grid_(grid), u_(init) {
    const int dim = model.dim;
    for (int a = 0; a < dim; ++a) {
        left_[a] = init.at(0, a);
        right_[a] = init.at(grid.N - 1, a);
    }
    if (dt <= 0.0) {
        const double eig = std::max(1e-12, max_jacobian_eig(model, init));
        dt = std::min(0.2 / eig, 5.0 * grid.h * grid.h);
    }
    dt_ = dt;
    // implicit operator I - dt D d2/dx2 over the full grid, identity rows at
    // the Dirichlet ends
    const int band = 2 * dim - 1;
    BandedMatrix A(grid.N * dim, band, band);
    const double r = dt_ / (grid.h * grid.h);
    for (int i = 1; i < grid.N - 1; ++i) {
        for (int a = 0; a < dim; ++a) {
            const int row = i * dim + a;
            A.add(row, row, 1.0);
            for (int b = 0; b < dim; ++b) {
                A.add(row, (i - 1) * dim + b, -r * D_(a, b));
                A.add(row, i * dim + b, 2.0 * r * D_(a, b));
                A.add(row, (i + 1) * dim + b, -r * D_(a, b));
            }
        }
    }
    for (int a = 0; a < dim; ++a) {
        A.at(a, a) = 1.0;
        A.at((grid.N - 1) * dim + a, (grid.N - 1) * dim + a) = 1.0;
    }
    lu_ = std::make_unique<BandedLU>(A);
    rhs_.resize(static_cast<std::size_t>(grid.N) * dim);
    du_.resize(rhs_.size());
}

void SimState::step() {
    const int N = grid_.N;
    const int dim = u_.dim;
    const double inv2h = 1.0 / (2.0 * grid_.h);
    if (model_.gradient_coupled)
        kernels::centered_difference(u_.v, dim, inv2h, du_);
    double f[2];
    for (int i = 1; i < N - 1; ++i) {
        model_.react(u_.node(i), &du_[static_cast<std::size_t>(i) * dim], f);
        for (int a = 0; a < dim; ++a)
            rhs_[static_cast<std::size_t>(i) * dim + a] = u_.at(i, a) + dt_ * f[a];
    }
    for (int a = 0; a < dim; ++a) {
        rhs_[a] = left_[a];
        rhs_[static_cast<std::size_t>(N - 1) * dim + a] = right_[a];
    }
    lu_->solve(rhs_);
    u_.v.swap(rhs_);
    t_ += dt_;
    const double m = kernels::max_abs(u_.v);
    if (!(m < 10.0))
        throw BlowupError("simulation blow-up (max |u| = " + std::to_string(m) + ") at t = " +
                              std::to_string(t_),
                          t_);
}

void SimState::advance(int steps) {
    for (int s = 0; s < steps; ++s) step();
}

namespace {

// Level value whose crossing defines the front position.
double crossing_value(const Profile& u, int i) {
    if (u.dim == 2) return -u.at(i, 0) + u.at(i, 1);
    const double mid = 0.5 * (u.at(0, 0) + u.at(u.grid.N - 1, 0));
    return u.at(i, 0) - mid;
}

double front_position(const Profile& u, double previous, bool have_previous) {
    const int N = u.grid.N;
    const double target = have_previous ? previous : 0.0;
    double best = 0.0;
    bool found = false;
    double g0 = crossing_value(u, 0);
    for (int i = 0; i < N - 1; ++i) {
        const double g1 = crossing_value(u, i + 1);
        if (g1 != g0 && ((g0 <= 0.0 && g1 > 0.0) || (g0 >= 0.0 && g1 < 0.0))) {
            const double x = u.grid.x(i) + u.grid.h * (0.0 - g0) / (g1 - g0);
            if (!found || std::fabs(x - target) < std::fabs(best - target)) {
                best = x;
                found = true;
            }
        }
        g0 = g1;
    }
    if (!found) throw Error("front tracking failure: no level crossing in the field");
    return best;
}

FrontTrack fit_track(std::vector<double> times, std::vector<double> positions, double h,
                     double T) {
    FrontTrack tr;
    tr.times = std::move(times);
    tr.positions = std::move(positions);
    // least squares on the second half
    const std::size_t n = tr.times.size();
    std::size_t start = 0;
    while (start < n && tr.times[start] < T / 2.0) ++start;
    const std::size_t m = n - start;
    double st = 0.0, sx = 0.0, stt = 0.0, stx = 0.0;
    for (std::size_t i = start; i < n; ++i) {
        st += tr.times[i];
        sx += tr.positions[i];
        stt += tr.times[i] * tr.times[i];
        stx += tr.times[i] * tr.positions[i];
    }
    const double denom = m * stt - st * st;
    tr.speed = denom != 0.0 ? (m * stx - st * sx) / denom : 0.0;
    const double icept = (sx - tr.speed * st) / static_cast<double>(m);
    double ss = 0.0;
    for (std::size_t i = start; i < n; ++i) {
        const double e = tr.positions[i] - (icept + tr.speed * tr.times[i]);
        ss += e * e;
    }
    tr.fit_rms = std::sqrt(ss / static_cast<double>(m));
    tr.resolution = h / (T / 2.0);
    tr.below_resolution = std::fabs(tr.speed) < tr.resolution;
    return tr;
}

}  // namespace

FrontTrack measure_speed_from(const ReactionModel& model, const Mat& D_eff, const Grid& grid,
                              const Profile& init, double T, const SimOptions& opts) {
    SimState sim(model, D_eff, grid, init, opts.dt);
    const int steps = static_cast<int>(std::ceil(T / sim.dt()));
    const int every = std::max(1, steps / std::max(1, opts.sample_target));
    std::vector<double> times, positions;
    times.reserve(static_cast<std::size_t>(steps / every) + 2);
    positions.reserve(times.capacity());
    double prev = front_position(init, 0.0, false);
    times.push_back(0.0);
    positions.push_back(prev);
    for (int s = 1; s <= steps; ++s) {
        sim.step();
        if (opts.frame_every > 0 && opts.frame_hook && s % opts.frame_every == 0)
            opts.frame_hook(sim.field(), sim.time(), s);
        if (s % every == 0 || s == steps) {
            const double x = front_position(sim.field(), prev, true);
            if (std::fabs(x) > opts.level_margin * grid.L)
                throw Error("front reached the domain boundary at t = " +
                            std::to_string(sim.time()) + "; domain too small");
            times.push_back(sim.time());
            positions.push_back(x);
            prev = x;
        }
    }
    return fit_track(std::move(times), std::move(positions), grid.h, T);
}

FrontTrack measure_speed(const ReactionModel& model, const Mat& D, const Mat& Dbar, double eps,
                         const Grid& grid, double T, const SimOptions& opts) {
    // unperturbed front as initial condition
    const auto& eq = model.equilibria_list;
    std::array<double, 2> left = eq.at(0).u, right = eq.at(1).u;
    if (model.dim == 1) {
        left = {1.0, 0.0};
        right = {0.0, 0.0};
    }
    const Profile init0 = default_front_init(model, grid, left, right);
    const FrontSolution front =
        (model.has_u1u2_symmetry && model.dim == 2)
            ? solve_standing_front(model, D, grid, init0)
            : solve_travelling_front(model, D, grid, init0, 0.0);
    const Mat D_eff = D.plus_scaled(Dbar, eps);
    return measure_speed_from(model, D_eff, grid, front.phi, T, opts);
}

std::vector<ValidationRow> validate_sensitivity(const ReactionModel& model, const Mat& D,
                                                const Mat& Dbar, const Grid& grid,
                                                const std::vector<double>& eps_list, double cbar,
                                                double T, const SimOptions& opts) {
    std::vector<ValidationRow> rows;
    for (double eps : eps_list) {
        ValidationRow row;
        row.eps = eps;
        row.predicted = eps * cbar;
        double Tr = T;
        if (Tr <= 0.0) {
            // long enough for ~12 grid cells of predicted displacement
            const double c = std::max(std::fabs(row.predicted), 1e-6);
            Tr = std::clamp(24.0 * grid.h / c, 200.0, 20000.0);
        }
        const FrontTrack tr = measure_speed(model, D, Dbar, eps, grid, Tr, opts);
        row.measured = tr.speed;
        row.resolution = tr.resolution;
        row.rel_error = row.predicted != 0.0
                            ? std::fabs(row.measured - row.predicted) / std::fabs(row.predicted)
                            : std::fabs(row.measured);
        // the advancing equilibrium: positive speed moves the interface
        // right, growing the domain of the left state
        const std::string left_label = model.equilibria_list.at(0).label;
        const std::string right_label = model.equilibria_list.at(1).label;
        if (tr.below_resolution)
            row.advancing = "none(below resolution)";
        else
            row.advancing = tr.speed > 0.0 ? left_label : right_label;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace frontlab
