#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "frontlab/front_solver.hpp"
#include "frontlab/profile.hpp"

namespace frontlab {

/// theta(y) = tanh(y/2) and its derivatives; solves
/// theta'' + (1/2) theta (1 - theta^2) = 0.
struct Theta {
    static double value(double y) { return std::tanh(y / 2.0); }
    static double d1(double y) {
        const double t = value(y);
        return 0.5 * (1.0 - t * t);
    }
    static double d2(double y) {
        const double t = value(y);
        return -t * d1(y);
    }
};

/// Exact toy standing front phi_T = 1, phi_L = tanh(sqrt(mu) x / 2) sampled
/// on the grid (canonical frame, c = 0). Throws ConfigError for mu <= 0.
FrontSolution toy_explicit_front(double mu, const Grid& grid);

/// First-order Lotka-Volterra front: phi_T = 1 - (eps^2/2)(1 - theta(eps x)^2),
/// phi_L = theta(eps x), remainder terms dropped.
FrontSolution lv_asymptotic_front(double eps, const Grid& grid);

struct LvAdjoint {
    Profile psi;   // canonical frame
    double alpha;  // 1 / ||theta'||^2_{L2(R)} = 3/2 at leading order
};
/// Leading-order adjoint kernel: psi_L = alpha theta'(eps x),
/// psi_T = -alpha theta(eps x) theta'(eps x).
LvAdjoint lv_asymptotic_adjoint(double eps, const Grid& grid);

/// Leading-order speed variation for the Lotka-Volterra model: eps/5, from
/// int_0^inf theta theta' theta'' dy = -1/15 and ||theta'||^2_{L2(R+)} = 1/3.
double lv_cbar_leading(double eps);

struct HomoclinicResult {
    std::vector<double> u;          // values at the requested t >= 0 nodes
    bool sign_change_warning = false;  // f changed sign on sampled points
};
/// Unique bounded solution of u'' = u + f on [0, inf) with u(0) = 0, via
///   u(t) = 1/2 ( e^{-t} int_0^t f (e^{-s} - e^s) ds
///              + (e^{-t} - e^t) int_t^inf f e^{-s} ds ),
/// evaluated with composite Simpson on an internal fine mesh; the tail
/// integral is truncated where e^{-s} < 1e-14 and accumulated from the far
/// end to avoid cancellation.
HomoclinicResult homoclinic_solution(const std::function<double(double)>& f,
                                     std::span<const double> t);

/// Transversal adjoint component for the toy model: solves
/// psi_T'' = psi_T + N (1 - mu) phi_L phi_L' with N = 3/(2 sqrt(mu)),
/// odd in x; returned at all grid nodes.
std::vector<double> toy_adjoint_transversal(double mu, const Grid& grid);

}  // namespace frontlab
