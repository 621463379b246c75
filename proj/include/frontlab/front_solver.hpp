#pragma once

#include <string>
#include <vector>

#include "frontlab/models.hpp"
#include "frontlab/profile.hpp"

namespace frontlab {

/// A converged (or analytically constructed) front profile with its speed
/// and solve diagnostics.
struct FrontSolution {
    Profile phi;
    double speed = 0.0;
    double residual_norm = 0.0;    // scaled max norm of the interior residual
    double boundary_defect = 0.0;  // max distance from E-/E+ over the outer 5% of nodes
    double symmetry_defect = -1.0; // max |phi(-x) - S phi(x)|; -1 when not applicable
    std::vector<std::string> warnings;

    const Grid& grid() const { return phi.grid; }
};

struct NewtonOptions {
    double tol = 1e-12;   // on the scaled residual max-norm
    int max_iter = 50;
    int max_linesearch = 30;
};

/// tanh initializer: straight line between the two end states modulated by
/// tanh(x/2) in the longitudinal direction; end nodes hold the states exactly.
Profile default_front_init(const ReactionModel& model, const Grid& grid,
                           const std::array<double, 2>& left, const std::array<double, 2>& right);

/// Solves -c phi' = F(phi) + D phi'' with Dirichlet values taken from the
/// ends of `init`, jointly for (phi, c); the translation phase is fixed by
/// the integral condition <phi_ref', phi - phi_ref> = 0 against the
/// initializer. Throws ConvergenceError on Newton failure.
FrontSolution solve_travelling_front(const ReactionModel& model, const Mat& D, const Grid& grid,
                                     const Profile& init, double c_init,
                                     const NewtonOptions& opts = {});

/// Standing-front variant for exchange-symmetric models: same bordered
/// Newton, but the scalar constraint pins the longitudinal component at
/// x = 0 instead of the integral phase condition. The speed unknown
/// converges to zero and symmetry is verified, not imposed.
FrontSolution solve_standing_front(const ReactionModel& model, const Mat& D, const Grid& grid,
                                   const Profile& init, const NewtonOptions& opts = {});

/// Quadrature speed: -<F(phi), phi'> / ||phi'||^2 (trapezoid). Throws on a
/// degenerate profile (||phi'||^2 < 1e-14).
double front_speed_quadrature(const ReactionModel& model, const FrontSolution& front);

/// Natural continuation: re-solves for each parameter value, seeding each
/// solve with the previous solution. Nonconvergence aborts the sweep with
/// the failing value named.
std::vector<FrontSolution> continue_in_parameter(const ReactionModel& model, const Mat& D,
                                                 const Grid& grid,
                                                 const std::string& param_name,
                                                 const std::vector<double>& values,
                                                 const NewtonOptions& opts = {});

/// True when the longitudinal component -u1+u2 is nondecreasing (within
/// -1e-10) across nodes; wrong-branch detector for bistable fronts.
bool longitudinally_monotone(const FrontSolution& front);

/// Saddle-branch capture: both quarter points of the profile sit within 0.05
/// of a saddle equilibrium. Returns the saddle's label, or "" when clean.
std::string detect_saddle_capture(const ReactionModel& model, const Profile& phi);

/// Max-norm of F(phi) + D phi'' + c phi' at interior nodes (diagnostic used
/// by tests; same stencils as the solver).
double front_residual_norm(const ReactionModel& model, const Mat& D, const FrontSolution& front);

}  // namespace frontlab
