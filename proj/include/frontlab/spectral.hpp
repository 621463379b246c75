#pragma once

#include <string>
#include <vector>

#include "frontlab/banded.hpp"
#include "frontlab/front_solver.hpp"
#include "frontlab/models.hpp"

namespace frontlab {

/// Discretization of the linearized operator L = c d/dx + DF(phi) + D d2/dx2
/// (or its adjoint) over the interior nodes, with zero Dirichlet ends.
struct OperatorMatrix {
    enum class Role { linearized, adjoint };
    BandedMatrix A;
    Role role;
    int N = 0;    // nodes of the underlying grid (interior count is N-2)
    int dim = 2;
    double c = 0.0;
    Grid grid;
};

OperatorMatrix assemble_linearized(const FrontSolution& front, const ReactionModel& model,
                                   const Mat& D);
OperatorMatrix assemble_adjoint(const FrontSolution& front, const ReactionModel& model,
                                const Mat& D);

/// Applies the operator to a full-grid profile (boundary values of the input
/// are ignored; output has zero boundary entries).
Profile apply_operator(const OperatorMatrix& op, const Profile& p);

struct EssentialReport {
    bool pass = false;
    double bound = 0.0;   // max over sampled k and both ends of max Re eig(DF(E) - k^2 D)
    double k_worst = 0.0;
    double k_max = 0.0;
};
/// Hypothesis on the essential spectrum: DF(E-) - k^2 D and DF(E+) - k^2 D
/// must be stable for every k. Samples k in [0, k_max]; k_max <= 0 picks a
/// Gershgorin-based bound automatically. The end states are the first two
/// listed equilibria of the model.
EssentialReport essential_spectrum_check(const ReactionModel& model, const Mat& D,
                                         const std::array<double, 2>& e_minus,
                                         const std::array<double, 2>& e_plus, double k_max = -1.0,
                                         int k_samples = 400);

struct KernelResult {
    Profile psi;  // full grid, zero ends, normalized <psi, phi'> = 1
    double tau = 0.0;           // bordered multiplier, |tau| ~ |lambda_0|
    double residual = 0.0;      // max-norm of L* psi on the interior
    double normalization = 0.0; // <psi, phi'> re-check (trapezoid)
    std::vector<std::string> warnings;
};
/// Adjoint kernel psi with <psi, phi'> = 1, via one bordered solve
/// [L* phi'; w^T 0][psi; tau] = [0; 1] (w = quadrature weights of phi')
/// followed by an inverse-iteration polish. Throws HypothesisError when the
/// bordered system is singular (kernel orthogonal to phi', i.e. zero
/// eigenvalue not simple).
KernelResult kernel_adjoint(const OperatorMatrix& adjoint_op, const FrontSolution& front);

struct SpectralReport {
    double essential_bound = 0.0;
    double zero_eig_estimate = 0.0;
    double spectral_gap = 0.0;               // |next eigenvalue|
    double kernel_angle = 0.0;               // sin of angle between ker L and phi'
    double rightmost_nonzero_real_part = 0.0;
    bool h1_pass = false;
    bool h2_pass = false;
    bool stable_pass = false;  // rightmost nonzero real part < 0
    int iterations = 0;
    bool eigen_converged = true;
    static constexpr double gap_tol = 1e-4;
};

/// Near-zero eigenvalue, spectral gap and rightmost nonzero eigenvalue of
/// the linearized operator by inverse-power iteration with deflation
/// (essential_bound / h1_pass are filled by the caller; see
/// spectral_report()).
SpectralReport zero_multiplicity_and_gap(const OperatorMatrix& op, const FrontSolution& front);

/// Full H1+H2 report for a converged front.
SpectralReport spectral_report(const ReactionModel& model, const Mat& D,
                               const FrontSolution& front);

}  // namespace frontlab
