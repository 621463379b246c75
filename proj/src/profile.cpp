#include "frontlab/profile.hpp"

#include <cassert>
#include <cmath>

#include "frontlab/errors.hpp"
#include "frontlab/kernels.hpp"

namespace frontlab {

Grid build_grid(double L, int N) {
    if (!(L > 0.0)) throw ConfigError("grid: half-length L must be positive");
    if (N < 3) throw ConfigError("grid: node count N must be at least 3");
    if (N % 2 == 0)
        throw ConfigError("grid: node count N must be odd so that x = 0 is a node (got N = " +
                          std::to_string(N) + ")");
    Grid g;
    g.L = L;
    g.N = N;
    g.h = 2.0 * L / (N - 1);
    return g;
}

Profile derivative(const Profile& p) {
    Profile d(p.grid, p.dim);
    const std::size_t dim = p.dim;
    const double inv2h = 1.0 / (2.0 * p.grid.h);
    kernels::centered_difference(p.v, dim, inv2h, d.v);
    const int N = p.grid.N;
    for (int c = 0; c < p.dim; ++c) {
        d.at(0, c) = (-3.0 * p.at(0, c) + 4.0 * p.at(1, c) - p.at(2, c)) * inv2h;
        d.at(N - 1, c) = (3.0 * p.at(N - 1, c) - 4.0 * p.at(N - 2, c) + p.at(N - 3, c)) * inv2h;
    }
    return d;
}

Profile second_derivative(const Profile& p) {
    Profile d(p.grid, p.dim);
    const double invh2 = 1.0 / (p.grid.h * p.grid.h);
    kernels::second_difference(p.v, p.dim, invh2, d.v);
    const int N = p.grid.N;
    for (int c = 0; c < p.dim; ++c) {
        d.at(0, c) =
            (2.0 * p.at(0, c) - 5.0 * p.at(1, c) + 4.0 * p.at(2, c) - p.at(3, c)) * invh2;
        d.at(N - 1, c) = (2.0 * p.at(N - 1, c) - 5.0 * p.at(N - 2, c) + 4.0 * p.at(N - 3, c) -
                          p.at(N - 4, c)) *
                         invh2;
    }
    return d;
}

double ip_scale(int dim) { return dim == 2 ? 2.0 : 1.0; }

namespace {

double node_dot(const Profile& a, const Profile& b, int i) {
    double s = 0.0;
    for (int c = 0; c < a.dim; ++c) s += a.at(i, c) * b.at(i, c);
    return s;
}

}  // namespace

double l2_inner(const Profile& a, const Profile& b) {
    assert(a.dim == b.dim && a.grid.N == b.grid.N);
    const int N = a.grid.N;
    double s = kernels::dot(a.v, b.v);
    s -= 0.5 * (node_dot(a, b, 0) + node_dot(a, b, N - 1));
    return ip_scale(a.dim) * a.grid.h * s;
}

double l2_inner_half(const Profile& a, const Profile& b) {
    assert(a.dim == b.dim && a.grid.N == b.grid.N);
    const int N = a.grid.N;
    const int mid = a.grid.mid();
    const std::size_t off = static_cast<std::size_t>(mid) * a.dim;
    double s = kernels::dot(std::span<const double>(a.v).subspan(off),
                            std::span<const double>(b.v).subspan(off));
    s -= 0.5 * (node_dot(a, b, mid) + node_dot(a, b, N - 1));
    return ip_scale(a.dim) * a.grid.h * s;
}

double l2_inner_simpson(const Profile& a, const Profile& b) {
    assert(a.dim == b.dim && a.grid.N == b.grid.N);
    const int N = a.grid.N;
    double s = node_dot(a, b, 0) + node_dot(a, b, N - 1);
    for (int i = 1; i < N - 1; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * node_dot(a, b, i);
    return ip_scale(a.dim) * a.grid.h / 3.0 * s;
}

double trap(std::span<const double> g, double h) {
    double s = 0.0;
    for (double v : g) s += v;
    s -= 0.5 * (g.front() + g.back());
    return h * s;
}

double trap_half(std::span<const double> g, double h, int mid) {
    double s = 0.0;
    for (std::size_t i = mid; i < g.size(); ++i) s += g[i];
    s -= 0.5 * (g[mid] + g.back());
    return h * s;
}

double simpson(std::span<const double> g, double h) {
    const std::size_t N = g.size();
    double s = g[0] + g[N - 1];
    for (std::size_t i = 1; i + 1 < N; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * g[i];
    return h / 3.0 * s;
}

std::vector<double> wedge(const Profile& a, const Profile& b) {
    assert(a.dim == 2 && b.dim == 2);
    std::vector<double> w(a.grid.N);
    for (int i = 0; i < a.grid.N; ++i)
        w[i] = a.at(i, 0) * b.at(i, 1) - a.at(i, 1) * b.at(i, 0);
    return w;
}

double max_abs_diff(const Profile& a, const Profile& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.v.size(); ++k) m = std::max(m, std::fabs(a.v[k] - b.v[k]));
    return m;
}

double exchange_symmetry_defect(const Profile& p, double sign) {
    assert(p.dim == 2);
    const int N = p.grid.N;
    double m = 0.0;
    for (int i = 0; i < N; ++i) {
        const int j = N - 1 - i;  // node at -x_i
        m = std::max(m, std::fabs(p.at(j, 0) - sign * p.at(i, 1)));
        m = std::max(m, std::fabs(p.at(j, 1) - sign * p.at(i, 0)));
    }
    return m;
}

}  // namespace frontlab
