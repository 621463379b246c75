#pragma once

#include <span>
#include <string>
#include <vector>

#include "frontlab/models.hpp"

namespace frontlab {

/// Uniform mesh on [-L, L] with an odd node count so x = 0 is a node.
struct Grid {
    double L = 0.0;
    int N = 0;
    double h = 0.0;

    double x(int i) const { return -L + i * h; }
    int mid() const { return (N - 1) / 2; }
};

/// Throws ConfigError unless L > 0 and N is odd and >= 3.
Grid build_grid(double L, int N);

/// Nodal values of a dim-component field, canonical frame, interleaved
/// (node-major) storage.
struct Profile {
    Grid grid;
    int dim = 2;
    std::vector<double> v;  // size N*dim

    Profile() = default;
    Profile(const Grid& g, int dim) : grid(g), dim(dim), v(static_cast<std::size_t>(g.N) * dim) {}

    double& at(int i, int c) { return v[static_cast<std::size_t>(i) * dim + c]; }
    double at(int i, int c) const { return v[static_cast<std::size_t>(i) * dim + c]; }
    const double* node(int i) const { return v.data() + static_cast<std::size_t>(i) * dim; }
    double* node(int i) { return v.data() + static_cast<std::size_t>(i) * dim; }
    int nodes() const { return grid.N; }
};

/// First derivative, centered in the interior, second-order one-sided at the
/// two boundary nodes.
Profile derivative(const Profile& p);
/// Second derivative by the same stencil used in operator assembly;
/// one-sided second-order at the ends.
Profile second_derivative(const Profile& p);

/// Scale applied to pointwise dot products of two-species profiles: pairing
/// is taken in transversal-longitudinal components, which doubles the
/// canonical dot (|P u|^2 = 2 |u|^2 for the T-L map). One-component profiles
/// use the plain product.
double ip_scale(int dim);

/// Trapezoid L2 inner product of two profiles over [-L, L], T-L convention.
double l2_inner(const Profile& a, const Profile& b);
/// Same restricted to [0, L] (trapezoid from the middle node).
double l2_inner_half(const Profile& a, const Profile& b);
/// Composite Simpson re-check of l2_inner (N odd, so the panel count is even).
double l2_inner_simpson(const Profile& a, const Profile& b);

/// Trapezoid integral of a scalar nodal array over [-L, L] / [0, L].
double trap(std::span<const double> g, double h);
double trap_half(std::span<const double> g, double h, int mid);
double simpson(std::span<const double> g, double h);

/// Pointwise wedge a /\ b = a1 b2 - a2 b1 per node (dim 2 only).
std::vector<double> wedge(const Profile& a, const Profile& b);

/// max_i |a_i - b_i| over all nodes and components.
double max_abs_diff(const Profile& a, const Profile& b);

/// max_i |phi(-x_i) - sign * S phi(x_i)| for the exchange S(u1,u2)=(u2,u1);
/// sign = +1 tests phi(-x) = S phi(x), sign = -1 tests phi(-x) = -S phi(x).
double exchange_symmetry_defect(const Profile& p, double sign);

}  // namespace frontlab
