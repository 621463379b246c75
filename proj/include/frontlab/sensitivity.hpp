#pragma once

#include <map>
#include <string>
#include <utility>

#include "frontlab/front_solver.hpp"
#include "frontlab/models.hpp"
#include "frontlab/spectral.hpp"

namespace frontlab {

/// First-order speed variation under D -> D + eps Dbar, computed by every
/// route, with the profiles and symmetry diagnostics behind them.
struct SensitivityReport {
    double cbar_solvency = 0.0;
    double cbar_alternative = 0.0;
    double cbar_halfline_solvency = 0.0;
    double cbar_halfline_rot = 0.0;
    Profile psi;
    Profile phibar;
    double orthogonality_defect = 0.0;  // |<phi', phibar>|
    std::map<std::string, double> symmetry_defects;
    FrontSolution front;
    SpectralReport spectral;
    bool halfline_valid = false;
};

/// Solvency condition: cbar = -<psi, Dbar phi''>. Rejects an unnormalized
/// psi (|<psi, phi'> - 1| > 1e-6).
double cbar_solvency(const FrontSolution& front, const Profile& psi, const Mat& Dbar);

/// Solves L phibar = -Dbar phi'' - cbar phi' with <phi', phibar> = 0 through
/// a bordered system. cbar must be the solvency value so the right-hand side
/// is in the range of L.
Profile solve_first_order_profile(const FrontSolution& front, const ReactionModel& model,
                                  const Mat& D, const Mat& Dbar, double cbar,
                                  double* orthogonality_defect = nullptr,
                                  double* residual = nullptr);

/// Rot/wedge expression (two components):
///   cbar = [<rot F(phi), phi' ^ phibar> + 2 c <phi'', phibar>] / ||phi'||^2,
/// a ratio of same-type integrals, hence frame-independent. For one-component
/// models the rot term is absent and the general (L - L*) form reduces to
/// the 2c term.
double cbar_alternative(const FrontSolution& front, const ReactionModel& model,
                        const Profile& phibar);

/// Half-line forms (-2<psi, Dbar phi''>_{R+},
/// <rot, phi'^phibar>_{R+}/||phi'||^2_{R+}). Requires the exchange symmetry
/// of the model and Dbar = diag(d, -d); throws HypothesisError with the
/// offending defect otherwise.
std::pair<double, double> cbar_halfline(const FrontSolution& front, const Profile& psi,
                                        const Profile& phibar, const ReactionModel& model,
                                        const Mat& Dbar);

struct SensitivityOptions {
    NewtonOptions newton;
    bool run_eigen = true;       // include the gap/multiplicity iteration
    double symmetry_tol = 1e-6;  // gate for the half-line formulas
};

/// Full pipeline: standing front -> H1 check -> psi -> cbar (all
/// expressions) -> phibar -> symmetry diagnostics.
SensitivityReport full_report(const ReactionModel& model, const DiffusionSpec& diff,
                              const Grid& grid, const SensitivityOptions& opts = {});

}  // namespace frontlab
