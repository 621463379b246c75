#pragma once

#include <cmath>

#include "frontlab/models.hpp"

// Shared test doubles.

namespace frontlab::testing {

/// Coupled double-well gradient system:
///   F = -grad V,  V = sum_i (1 - u_i^2)^2 / 4 + kappa u_1 u_2,
/// exchange-symmetric with stable equilibria (a, -a) and (-a, a),
/// a = sqrt(1 + kappa). The coupling keeps the zero eigenvalue simple (a
/// decoupled pair would carry a second, relative-translation null mode).
/// Its linearization is self-adjoint and the standing front satisfies c = 0.
inline ReactionModel make_gradient_double(double kappa = 0.25) {
    ReactionModel m;
    m.name = "gradient_double";
    m.dim = 2;
    m.has_u1u2_symmetry = true;
    m.react = [kappa](const double* u, const double*, double* out) {
        out[0] = u[0] - u[0] * u[0] * u[0] - kappa * u[1];
        out[1] = u[1] - u[1] * u[1] * u[1] - kappa * u[0];
    };
    m.jacobian = [kappa](const double* u, const double*, double* dfu, double* dfux) {
        dfu[0] = 1.0 - 3.0 * u[0] * u[0];
        dfu[1] = -kappa;
        dfu[2] = -kappa;
        dfu[3] = 1.0 - 3.0 * u[1] * u[1];
        if (dfux != nullptr) dfux[0] = dfux[1] = dfux[2] = dfux[3] = 0.0;
    };
    const double a = std::sqrt(1.0 + kappa);
    m.equilibria_list = {{"minus", {-a, a}}, {"plus", {a, -a}}, {"origin", {0.0, 0.0}}};
    return m;
}

}  // namespace frontlab::testing
