#pragma once

#include <utility>

#include "frontlab/front_solver.hpp"
#include "frontlab/models.hpp"

namespace frontlab {

/// Conventional end states for the front connecting the two stable
/// equilibria: toy/LV run E1 (left) to E2 (right), Nagumo runs 1 (left) to
/// 0 (right).
std::pair<std::array<double, 2>, std::array<double, 2>> default_front_states(
    const ReactionModel& model);

/// Domain-truncation rule: half-length L with nu * L >= 24, where nu is the
/// slowest spatial decay rate sqrt(min |eig(D^{-1} DF(E))|) over both end
/// states, and h resolving the fastest rate. Returns an odd-N grid.
Grid auto_grid(const ReactionModel& model, const Mat& D);

/// Solves the conventional front for the model (standing solve for
/// exchange-symmetric models, travelling otherwise).
FrontSolution solve_default_front(const ReactionModel& model, const Mat& D, const Grid& grid,
                                  const NewtonOptions& opts = {});

/// The two Ginzburg-Landau fronts between the stable phases: both start at
/// theta = arcsin(omega)/2 on the left; the first increases theta by pi
/// through one saddle, the second decreases it by pi through the other.
/// Their speeds have opposite signs.
std::pair<FrontSolution, FrontSolution> gl_front_pair(double eps, double omega, const Grid& grid,
                                                      const NewtonOptions& opts = {});

}  // namespace frontlab
