#include <cmath>
#include <random>

#include <doctest.h>

#include "frontlab/asymptotics.hpp"
#include "frontlab/errors.hpp"
#include "frontlab/kernels.hpp"
#include "frontlab/scenarios.hpp"
#include "frontlab/spectral.hpp"
#include "test_doubles.hpp"

using namespace frontlab;

namespace {

FrontSolution toy_front(double mu, double L, int N) {
    const auto m = make_model("toy", {{"mu", mu}});
    const Grid g = build_grid(L, N);
    return solve_standing_front(m, Mat::identity(2), g,
                                default_front_init(m, g, {1.0, 0.0}, {0.0, 1.0}));
}

double op_entry(const OperatorMatrix& op, int i, int j) { return op.A.get(i, j); }

}  // namespace

TEST_CASE("L phi' is a second-order small residual") {
    const double mu = 1.0;
    const auto m = make_model("toy", {{"mu", mu}});
    double prev = 0.0;
    for (int N : {1601, 3201}) {
        const FrontSolution f = toy_front(mu, 30.0, N);
        const OperatorMatrix L = assemble_linearized(f, m, Mat::identity(2));
        const Profile dphi = derivative(f.phi);
        const Profile r = apply_operator(L, dphi);
        double rn = 0.0, dn = 0.0;
        for (std::size_t k = 0; k < r.v.size(); ++k) {
            rn = std::max(rn, std::fabs(r.v[k]));
            dn = std::max(dn, std::fabs(dphi.v[k]));
        }
        // skip the first/last interior rows: the operator treats the
        // boundary values of the input as zero there
        (void)op_entry;
        const double rel = rn / dn;
        if (prev > 0.0) CHECK(prev / rel > 3.0);  // second order in h
        prev = rel;
        CHECK(rel < 2e-4);
    }
}

TEST_CASE("toy transversal row reproduces the linearization coefficients") {
    // In T-L coordinates the transversal row of L is -1 + d2/dx2; in
    // canonical coordinates this shows up as DF(phi) having eigenvalue -1
    // with eigenvector (1,1) along the whole front line v_T = 1.
    const double mu = 0.7;
    const auto m = make_model("toy", {{"mu", mu}});
    const FrontSolution f = toy_front(mu, 30.0, 1201);
    for (int i : {100, 600, 900}) {
        const Mat J = eval_jacobian(m, {f.phi.at(i, 0), f.phi.at(i, 1)});
        // the row functional v_T = u1 + u2 satisfies (1,1) DF = -(1,1) on
        // the front line v_T = 1 (the transversal block of the linearization
        // is -1 + d2/dx2)
        const double r0 = J(0, 0) + J(1, 0);
        const double r1 = J(0, 1) + J(1, 1);
        CHECK(std::fabs(r0 + 1.0) < 1e-9);
        CHECK(std::fabs(r1 + 1.0) < 1e-9);
    }
}

TEST_CASE("gradient double: assembled operator is symmetric, adjoint equals transpose") {
    const auto m = testing::make_gradient_double();
    const Grid g = build_grid(20.0, 801);
    const FrontSolution f = solve_standing_front(
        m, Mat::identity(2), g,
        default_front_init(m, g, m.equilibria_list[0].u, m.equilibria_list[1].u));
    CHECK(std::fabs(f.speed) < 1e-12);
    const OperatorMatrix L = assemble_linearized(f, m, Mat::identity(2));
    const OperatorMatrix Ls = assemble_adjoint(f, m, Mat::identity(2));
    const int M = L.A.n();
    for (int i = 0; i < M; ++i)
        for (int j = std::max(0, i - 3); j <= std::min(M - 1, i + 3); ++j) {
            CHECK(std::fabs(L.A.get(i, j) - L.A.get(j, i)) < 1e-12);  // self-adjoint case
            CHECK(L.A.get(j, i) == Ls.A.get(i, j));                   // exact transpose
        }
}

TEST_CASE("adjoint pairing <L a, b> = <a, L* b> for compactly supported fields") {
    const double mu = 0.8;
    const auto m = make_model("toy", {{"mu", mu}});
    const FrontSolution f = toy_front(mu, 30.0, 1201);
    const OperatorMatrix L = assemble_linearized(f, m, Mat::identity(2));
    const OperatorMatrix Ls = assemble_adjoint(f, m, Mat::identity(2));
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const Grid& g = f.phi.grid;
    for (int trial = 0; trial < 5; ++trial) {
        Profile a(g, 2), b(g, 2);
        for (int i = g.N / 4; i < 3 * g.N / 4; ++i)
            for (int c = 0; c < 2; ++c) {
                a.at(i, c) = dist(rng);
                b.at(i, c) = dist(rng);
            }
        const Profile La = apply_operator(L, a);
        const Profile Lsb = apply_operator(Ls, b);
        CHECK(std::fabs(l2_inner(La, b) - l2_inner(a, Lsb)) < 1e-10);
    }
}

TEST_CASE("essential spectrum bound: toy analytic value, monostable LV failure") {
    const Mat I2 = Mat::identity(2);
    {
        const auto m = make_model("toy", {{"mu", 0.5}});
        const auto rep = essential_spectrum_check(m, I2, {1.0, 0.0}, {0.0, 1.0});
        CHECK(rep.pass);
        CHECK(std::fabs(rep.bound - (-0.5)) < 1e-10);
        CHECK(rep.k_worst == 0.0);
    }
    {
        const auto m = make_model("toy", {{"mu", 2.0}});
        const auto rep = essential_spectrum_check(m, I2, {1.0, 0.0}, {0.0, 1.0});
        CHECK(rep.pass);
        CHECK(std::fabs(rep.bound - (-1.0)) < 1e-10);
    }
    {
        const auto m = make_model("lotka_volterra", {{"mu", -0.1}});
        const auto rep = essential_spectrum_check(m, I2, {1.0, 0.0}, {0.0, 1.0});
        CHECK(!rep.pass);
        CHECK(rep.bound > 0.05);  // eigenvalue -mu = +0.1 at k = 0
    }
}

TEST_CASE("adjoint kernel of the gradient double is phi' normalized") {
    // the kernel-vs-derivative gap is O(h^2) (measured 1.2e-5 at h=0.025,
    // ratio 16 per halving); h ~ 4e-4 puts it below 1e-8
    const auto m = testing::make_gradient_double();
    const Grid g = build_grid(20.0, 102401);
    const FrontSolution f = solve_standing_front(
        m, Mat::identity(2), g,
        default_front_init(m, g, m.equilibria_list[0].u, m.equilibria_list[1].u));
    const KernelResult ker = kernel_adjoint(assemble_adjoint(f, m, Mat::identity(2)), f);
    const Profile dphi = derivative(f.phi);
    const double nrm2 = l2_inner(dphi, dphi);
    double worst = 0.0;
    for (std::size_t k = 0; k < ker.psi.v.size(); ++k)
        worst = std::max(worst, std::fabs(ker.psi.v[k] - dphi.v[k] / nrm2));
    CHECK(worst < 1e-8);
    CHECK(ker.warnings.empty());
}

TEST_CASE("toy adjoint kernel: psi_L = N phi_L', psi_T from the forced equation") {
    const double mu = 0.5;
    const auto m = make_model("toy", {{"mu", mu}});
    const FrontSolution f = toy_front(mu, 30.0, 12801);
    const KernelResult ker = kernel_adjoint(assemble_adjoint(f, m, Mat::identity(2)), f);
    CHECK(std::fabs(ker.normalization - 1.0) < 1e-10);
    // Simpson re-check of the normalization
    const Profile dphi = derivative(f.phi);
    CHECK(std::fabs(l2_inner_simpson(ker.psi, dphi) - 1.0) < 1e-8);
    CHECK(ker.residual < 1e-8);

    const double Nconst = 3.0 / (2.0 * std::sqrt(mu));
    double worstL = 0.0;
    for (int i = 0; i < f.phi.grid.N; ++i) {
        const double psiL = -ker.psi.at(i, 0) + ker.psi.at(i, 1);
        const double dphiL = -dphi.at(i, 0) + dphi.at(i, 1);
        worstL = std::max(worstL, std::fabs(psiL - Nconst * dphiL));
    }
    CHECK(worstL < 1e-6);

    // independent route for psi_T through the forced second-order equation
    const auto psiT_ref = toy_adjoint_transversal(mu, f.phi.grid);
    double worstT = 0.0;
    for (int i = 0; i < f.phi.grid.N; ++i) {
        const double psiT = ker.psi.at(i, 0) + ker.psi.at(i, 1);
        worstT = std::max(worstT, std::fabs(psiT - psiT_ref[i]));
    }
    CHECK(worstT < 1e-5);

    // antisymmetry psi(-x) = -S psi(x)
    CHECK(exchange_symmetry_defect(ker.psi, -1.0) < 1e-6);
}

TEST_CASE("toy mu=1: transversal adjoint component vanishes identically") {
    const auto m = make_model("toy", {{"mu", 1.0}});
    const FrontSolution f = toy_front(1.0, 30.0, 1601);
    const KernelResult ker = kernel_adjoint(assemble_adjoint(f, m, Mat::identity(2)), f);
    double worst = 0.0;
    for (int i = 0; i < f.phi.grid.N; ++i)
        worst = std::max(worst, std::fabs(ker.psi.at(i, 0) + ker.psi.at(i, 1)));
    CHECK(worst < 1e-8);
}

TEST_CASE("lv adjoint kernel approaches alpha theta'(eps x)") {
    const double eps = 0.2;
    const auto m = make_model("lotka_volterra", {{"eps", eps}});
    const Grid g = build_grid(24.0 / eps, 1921);
    const FrontSolution f = solve_standing_front(
        m, Mat::identity(2), g, default_front_init(m, g, {1.0, 0.0}, {0.0, 1.0}));
    const KernelResult ker = kernel_adjoint(assemble_adjoint(f, m, Mat::identity(2)), f);
    const auto asym = lv_asymptotic_adjoint(eps, g);
    double worstL = 0.0;
    for (int i = 0; i < g.N; ++i) {
        const double psiL = -ker.psi.at(i, 0) + ker.psi.at(i, 1);
        const double refL = -asym.psi.at(i, 0) + asym.psi.at(i, 1);
        worstL = std::max(worstL, std::fabs(psiL - refL));
    }
    // remainder is O(eps) relative to the O(1) amplitude alpha theta'
    CHECK(worstL < 0.5 * eps);
}

TEST_CASE("kernel orthogonal to phi' raises the non-transversality error") {
    // hand-built adjoint operator whose near-kernel is e_0 while phi' has a
    // zero first interior entry, so <kernel, phi'> = 0
    const Grid g = build_grid(3.0, 7);
    const int M = 5;
    OperatorMatrix op{BandedMatrix(M, 1, 1), OperatorMatrix::Role::adjoint, g.N, 1, 0.0, g};
    op.A.at(0, 0) = 1e-15;
    for (int i = 1; i < M; ++i) op.A.at(i, i) = 1.0;
    FrontSolution f;
    f.phi = Profile(g, 1);
    // values whose centered difference vanishes at the first interior node
    const double vals[7] = {0.0, 1.0, 0.0, 1.0, 2.0, 3.0, 4.0};
    for (int i = 0; i < 7; ++i) f.phi.at(i, 0) = vals[i];
    CHECK_THROWS_AS(kernel_adjoint(op, f), HypothesisError);
}

TEST_CASE("two near-zero eigenvalues trigger the multiplicity warning") {
    // diag(1e-12, 3e-12, 1, 1, ...): inverse iteration keeps drifting between
    // the two near-null directions; phi' is aligned with the first so the
    // normalization itself stays well posed
    const Grid g = build_grid(3.0, 9);
    const int M = 7;
    OperatorMatrix op{BandedMatrix(M, 1, 1), OperatorMatrix::Role::adjoint, g.N, 1, 0.0, g};
    op.A.at(0, 0) = 1e-12;
    op.A.at(1, 1) = 3e-12;
    for (int i = 2; i < M; ++i) op.A.at(i, i) = 1.0;
    FrontSolution f;
    f.phi = Profile(g, 1);
    // centered differences at the interior nodes: (1, 0, 0, 0, 0, 0, 0)
    const double vals[9] = {0.0, 0.0, 0.75, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    for (int i = 0; i < 9; ++i) f.phi.at(i, 0) = vals[i];
    const KernelResult ker = kernel_adjoint(op, f);
    REQUIRE(!ker.warnings.empty());
    CHECK(ker.warnings.front().find("multiplicity") != std::string::npos);
}

TEST_CASE("zero eigenvalue, gap and stability for the acceptance operators") {
    {
        const auto m = make_model("toy", {{"mu", 0.5}});
        const FrontSolution f = toy_front(0.5, 30.0, 3001);
        const auto rep = zero_multiplicity_and_gap(assemble_linearized(f, m, Mat::identity(2)), f);
        CHECK(std::fabs(rep.zero_eig_estimate) < 1e-8);
        CHECK(rep.spectral_gap == doctest::Approx(0.375).epsilon(1e-3));  // 3 mu / 4
        CHECK(rep.rightmost_nonzero_real_part < -0.01);
        CHECK(rep.h2_pass);
        CHECK(rep.stable_pass);
        CHECK(rep.kernel_angle < 1e-3);
    }
    {
        const auto m = make_model("toy", {{"mu", 2.0}});
        const FrontSolution f = toy_front(2.0, 30.0, 3001);
        const auto rep = zero_multiplicity_and_gap(assemble_linearized(f, m, Mat::identity(2)), f);
        CHECK(std::fabs(rep.zero_eig_estimate) < 1e-8);
        CHECK(rep.rightmost_nonzero_real_part < -0.01);
        CHECK(rep.stable_pass);
    }
    {
        const auto m = make_model("lotka_volterra", {{"eps", 0.3}});
        const Grid g = build_grid(80.0, 1601);
        const FrontSolution f = solve_standing_front(
            m, Mat::identity(2), g, default_front_init(m, g, {1.0, 0.0}, {0.0, 1.0}));
        const auto rep = zero_multiplicity_and_gap(assemble_linearized(f, m, Mat::identity(2)), f);
        CHECK(std::fabs(rep.zero_eig_estimate) < 1e-8);
        CHECK(rep.rightmost_nonzero_real_part < -0.01);
        CHECK(rep.h2_pass);
    }
}

TEST_CASE("full spectral report merges H1 and H2") {
    const auto m = make_model("toy", {{"mu", 0.5}});
    const FrontSolution f = toy_front(0.5, 30.0, 1501);
    const auto rep = spectral_report(m, Mat::identity(2), f);
    CHECK(rep.h1_pass);
    CHECK(rep.h2_pass);
    CHECK(rep.stable_pass);
    CHECK(rep.essential_bound == doctest::Approx(-0.5).epsilon(1e-10));
}
