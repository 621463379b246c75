#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "frontlab/banded.hpp"
#include "frontlab/front_solver.hpp"
#include "frontlab/models.hpp"

namespace frontlab {

/// IMEX time stepper for u_t = F(u) + D_eff u_xx: diffusion implicit (banded
/// solve, matrix factored once), reaction explicit, Dirichlet ends. The
/// default step obeys dt * max|eig DF| <= 0.2 and dt <= 5 h^2.
class SimState {
public:
    SimState(const ReactionModel& model, const Mat& D_eff, const Grid& grid, const Profile& init,
             double dt = 0.0 /* 0 = auto */);

    void step();  // throws BlowupError on NaN/overflow
    void advance(int steps);

    const Profile& field() const { return u_; }
    double time() const { return t_; }
    double dt() const { return dt_; }
    const Mat& d_effective() const { return D_; }

private:
    const ReactionModel& model_;
    Mat D_;
    Grid grid_;
    Profile u_;
    double t_ = 0.0;
    double dt_ = 0.0;
    std::array<double, 2> left_{}, right_{};
    std::unique_ptr<BandedLU> lu_;
    std::vector<double> rhs_, du_;
};

/// Front position series: x*(t) where the longitudinal component crosses
/// zero (one-component models: where u crosses the midpoint of the end
/// states), with a least-squares speed fit over the second half of the run.
struct FrontTrack {
    std::vector<double> times;
    std::vector<double> positions;
    double speed = 0.0;
    double fit_rms = 0.0;
    double resolution = 0.0;  // h / (T/2)
    bool below_resolution = false;
};

struct SimOptions {
    double dt = 0.0;        // 0 = auto
    int sample_target = 400;  // approximate number of tracked samples
    double level_margin = 0.9;  // |x*| > margin * L aborts: front left the domain
    int frame_every = 0;      // dump a field snapshot every k steps (0 = off)
    std::function<void(const Profile&, double t, int step)> frame_hook;
};

/// Runs the perturbed system from the unperturbed front and fits the speed.
/// Throws on blow-up, tracking failure or domain exit.
FrontTrack measure_speed(const ReactionModel& model, const Mat& D, const Mat& Dbar, double eps,
                         const Grid& grid, double T, const SimOptions& opts = {});

/// Same, starting from a supplied initial field (used for symmetric-decay
/// and consistency tests).
FrontTrack measure_speed_from(const ReactionModel& model, const Mat& D_eff, const Grid& grid,
                              const Profile& init, double T, const SimOptions& opts = {});

struct ValidationRow {
    double eps = 0.0;
    double measured = 0.0;
    double predicted = 0.0;  // eps * cbar
    double rel_error = 0.0;
    double resolution = 0.0;
    std::string advancing;  // equilibrium label whose domain grows
};

/// Measured speed vs eps * cbar for each eps; cbar is the unit-perturbation
/// first-order variation from the sensitivity module.
std::vector<ValidationRow> validate_sensitivity(const ReactionModel& model, const Mat& D,
                                                const Mat& Dbar, const Grid& grid,
                                                const std::vector<double>& eps_list, double cbar,
                                                double T = 0.0 /* 0 = auto per eps */,
                                                const SimOptions& opts = {});

}  // namespace frontlab
