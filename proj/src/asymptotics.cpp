#include "frontlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "frontlab/errors.hpp"

namespace frontlab {

FrontSolution toy_explicit_front(double mu, const Grid& grid) {
    if (!(mu > 0.0))
        throw ConfigError("toy_explicit_front: mu must be positive (bistable regime)");
    const double s = std::sqrt(mu);
    FrontSolution f;
    f.phi = Profile(grid, 2);
    for (int i = 0; i < grid.N; ++i) {
        const double vL = std::tanh(s * grid.x(i) / 2.0);
        const auto u = from_tl({1.0, vL});
        f.phi.at(i, 0) = u[0];
        f.phi.at(i, 1) = u[1];
    }
    f.speed = 0.0;
    f.residual_norm = 0.0;
    f.boundary_defect = 1.0 - std::tanh(s * grid.L / 2.0);
    f.symmetry_defect = exchange_symmetry_defect(f.phi, 1.0);
    return f;
}

FrontSolution lv_asymptotic_front(double eps, const Grid& grid) {
    FrontSolution f;
    f.phi = Profile(grid, 2);
    for (int i = 0; i < grid.N; ++i) {
        const double th = Theta::value(eps * grid.x(i));
        const double vT = 1.0 - 0.5 * eps * eps * (1.0 - th * th);
        const auto u = from_tl({vT, th});
        f.phi.at(i, 0) = u[0];
        f.phi.at(i, 1) = u[1];
    }
    f.speed = 0.0;
    f.boundary_defect = 1.0 - Theta::value(eps * grid.L);
    f.symmetry_defect = exchange_symmetry_defect(f.phi, 1.0);
    return f;
}

LvAdjoint lv_asymptotic_adjoint(double eps, const Grid& grid) {
    LvAdjoint out;
    out.alpha = 1.5;  // 1 / ||theta'||^2_{L2(R)}, ||theta'||^2 = 2/3
    out.psi = Profile(grid, 2);
    for (int i = 0; i < grid.N; ++i) {
        const double y = eps * grid.x(i);
        const double psiT = -out.alpha * Theta::value(y) * Theta::d1(y);
        const double psiL = out.alpha * Theta::d1(y);
        const auto u = from_tl({psiT, psiL});
        out.psi.at(i, 0) = u[0];
        out.psi.at(i, 1) = u[1];
    }
    return out;
}

double lv_cbar_leading(double eps) { return eps / 5.0; }

HomoclinicResult homoclinic_solution(const std::function<double(double)>& f,
                                     std::span<const double> t) {
    HomoclinicResult res;
    res.u.resize(t.size());
    if (t.empty()) return res;

    const double t_max = *std::max_element(t.begin(), t.end());
    const double T_tail = 33.0;  // e^{-33} < 1e-14
    double T_end = std::max(t_max, T_tail);
    const double hq_target = 0.005;
    // Uniform fine quadrature mesh with an even panel count; nodal values of
    // the cumulative integrals are interpolated cubically at the requested t.
    // When t itself is uniform the mesh subdivides its spacing exactly, so
    // output nodes hit quadrature nodes and no interpolation error enters
    // (differencing the result would otherwise amplify it).
    double hq = hq_target;
    if (t.size() >= 2) {
        const double ht = t[1] - t[0];
        bool uniform = ht > 0.0 && t[0] == 0.0;
        for (std::size_t i = 0; uniform && i < t.size(); ++i)
            if (std::fabs(t[i] - ht * static_cast<double>(i)) > 1e-9) uniform = false;
        if (uniform) hq = ht / std::max(1.0, std::round(ht / hq_target));
    }
    std::size_t M = static_cast<std::size_t>(std::ceil(T_end / hq));
    if (M % 2 != 0) ++M;
    if (M < 8) M = 8;
    T_end = hq * static_cast<double>(M);
    const std::size_t n = M + 1;

    std::vector<double> fv(n), g1(n), g2(n);
    bool pos = false, neg = false;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = hq * static_cast<double>(i);
        fv[i] = f(s);
        if (s > 0.0) {
            if (fv[i] > 0.0) pos = true;
            if (fv[i] < 0.0) neg = true;
        }
        g1[i] = fv[i] * (std::exp(-s) - std::exp(s));
        g2[i] = fv[i] * std::exp(-s);
    }
    res.sign_change_warning = pos && neg;

    // Cumulative integral of g1 from 0: Simpson on even pairs, 3-point
    // right-open Newton-Cotes for the odd nodes (both O(h^4) locally).
    std::vector<double> C1(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        if (i % 2 == 0)
            C1[i] = C1[i - 2] + hq / 3.0 * (g1[i - 2] + 4.0 * g1[i - 1] + g1[i]);
        else if (i == 1)
            C1[1] = hq / 12.0 * (5.0 * g1[0] + 8.0 * g1[1] - g1[2]);
        else
            C1[i] = C1[i - 1] + hq / 12.0 * (-g1[i - 2] + 8.0 * g1[i - 1] + 5.0 * g1[i]);
    }
    // Reverse cumulative of g2: R[i] = int_{s_i}^{T_end}; summed from the far
    // end so the small tail values never suffer cancellation.
    std::vector<double> R(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) {
        const std::size_t i = n - 1 - k;
        if (k % 2 == 0)
            R[i] = R[i + 2] + hq / 3.0 * (g2[i] + 4.0 * g2[i + 1] + g2[i + 2]);
        else if (k == 1)
            R[i] = hq / 12.0 * (5.0 * g2[n - 1] + 8.0 * g2[n - 2] - g2[n - 3]);
        else
            R[i] = R[i + 1] + hq / 12.0 * (5.0 * g2[i] + 8.0 * g2[i + 1] - g2[i + 2]);
    }

    auto interp = [&](const std::vector<double>& tab, double tt) {
        const double p = tt / hq;
        const double pr = std::round(p);
        if (std::fabs(p - pr) < 1e-6 && pr >= 0.0 && pr < static_cast<double>(n))
            return tab[static_cast<std::size_t>(pr)];  // exact node hit
        // cubic Lagrange on the fine mesh
        std::size_t i = static_cast<std::size_t>(std::min<long long>(
            std::max<long long>(0, static_cast<long long>(p) - 1), static_cast<long long>(n - 4)));
        const double a = p - static_cast<double>(i);
        const double L0 = -(a - 1) * (a - 2) * (a - 3) / 6.0;
        const double L1 = a * (a - 2) * (a - 3) / 2.0;
        const double L2 = -a * (a - 1) * (a - 3) / 2.0;
        const double L3 = a * (a - 1) * (a - 2) / 6.0;
        return L0 * tab[i] + L1 * tab[i + 1] + L2 * tab[i + 2] + L3 * tab[i + 3];
    };

    for (std::size_t j = 0; j < t.size(); ++j) {
        const double tt = t[j];
        if (tt == 0.0) {
            res.u[j] = 0.0;
            continue;
        }
        const double c1 = interp(C1, tt);
        const double r = interp(R, tt);
        res.u[j] = 0.5 * (std::exp(-tt) * c1 + (std::exp(-tt) - std::exp(tt)) * r);
    }
    return res;
}

std::vector<double> toy_adjoint_transversal(double mu, const Grid& grid) {
    if (!(mu > 0.0)) throw ConfigError("toy_adjoint_transversal: mu must be positive");
    const double s = std::sqrt(mu);
    const double N = 3.0 / (2.0 * s);  // 1 / ||phi_L'||^2, from int phi_L'^2 = 2 sqrt(mu)/3
    auto forcing = [mu, s, N](double x) {
        const double phiL = std::tanh(s * x / 2.0);
        const double dphiL = s / 2.0 * (1.0 - phiL * phiL);
        return N * (1.0 - mu) * phiL * dphiL;
    };
    const int n_half = grid.mid() + 1;
    std::vector<double> thalf(n_half);
    for (int i = 0; i < n_half; ++i) thalf[i] = grid.x(grid.mid() + i);
    const auto hom = homoclinic_solution(forcing, thalf);
    std::vector<double> psiT(grid.N);
    for (int i = 0; i < n_half; ++i) {
        psiT[grid.mid() + i] = hom.u[i];
        psiT[grid.mid() - i] = -hom.u[i];  // odd extension
    }
    return psiT;
}

}  // namespace frontlab
