#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace frontlab {

/// Small square matrix of runtime dimension 1 or 2 (diffusion matrices,
/// Jacobian blocks).
struct Mat {
    int dim = 2;
    std::array<double, 4> a{};  // row-major, a[i*dim+j]

    static Mat identity(int dim);
    static Mat diag(double d1, double d2);
    static Mat scalar1(double d);

    double operator()(int i, int j) const { return a[i * dim + j]; }
    double& operator()(int i, int j) { return a[i * dim + j]; }
    void apply(const double* x, double* y) const;
    Mat plus_scaled(const Mat& other, double s) const;  // this + s*other
    bool symmetric(double tol = 1e-14) const;
    /// Largest real part among eigenvalues (dim 1 or 2, real matrix).
    double max_real_eigenvalue() const;
    /// Smallest |eigenvalue| (assumes real eigenvalues; dim 1 or 2).
    double min_abs_eigenvalue() const;
    double max_abs_eigenvalue() const;
};

enum class Stability { stable, saddle, unstable };
const char* stability_name(Stability s);

struct Equilibrium {
    std::string label;
    std::array<double, 2> u{};  // canonical coordinates (only [0] used if dim 1)
};

struct LabeledEquilibrium {
    std::string label;
    std::array<double, 2> u{};
    Stability stability;
};

/// A named reaction system u_t = F(u[, u_x]) + D u_xx with analytic Jacobian
/// and known equilibria. Immutable after construction; callbacks are pure.
struct ReactionModel {
    std::string name;
    int dim = 2;
    std::map<std::string, double> params;
    bool has_u1u2_symmetry = false;
    bool gradient_coupled = false;  // F also takes u_x (Ginzburg-Landau polar)

    /// out = F(u, ux); ux may be null for non-coupled models.
    std::function<void(const double* u, const double* ux, double* out)> react;
    /// dfu = dF/du (row-major dim x dim); dfux = dF/du_x, may be null when
    /// the caller knows the model is not gradient coupled.
    std::function<void(const double* u, const double* ux, double* dfu, double* dfux)> jacobian;

    std::vector<Equilibrium> equilibria_list;
};

/// Builds one of the built-in models: `toy`, `lotka_volterra`, `nagumo`,
/// `ginzburg_landau_polar`. Throws ConfigError on unknown name or missing
/// parameters.
ReactionModel make_model(const std::string& name, const std::map<std::string, double>& params);

std::array<double, 2> eval_reaction(const ReactionModel& m, const std::array<double, 2>& u);
Mat eval_jacobian(const ReactionModel& m, const std::array<double, 2>& u);

/// Infinitesimal rotation d1 F2 - d2 F1 at u (canonical frame). Throws for
/// dim != 2.
double rot_f(const ReactionModel& m, const std::array<double, 2>& u);
/// Same scalar computed from the transversal-longitudinal Jacobian
/// P DF P^{-1} at the corresponding canonical point; used to test frame
/// invariance independently.
double rot_f_tl(const ReactionModel& m, const std::array<double, 2>& v);

/// Coordinate frames for two-species states: canonical (u1, u2) or
/// transversal-longitudinal (v_T, v_L) = (u1+u2, -u1+u2). Canonical is the
/// storage frame everywhere; T-L is a view.
enum class CoordinateFrame { canonical, transversal_longitudinal };

std::array<double, 2> to_tl(const std::array<double, 2>& u);
std::array<double, 2> from_tl(const std::array<double, 2>& v);
std::array<double, 2> convert_frame(const std::array<double, 2>& p, CoordinateFrame from,
                                    CoordinateFrame to);

struct SymmetryCheck {
    double max_defect = 0.0;
    bool pass = false;
};
/// Samples `sample_count` points u in [-2,2]^2 (fixed seed) and returns
/// max |F(S u) - S F(u)|.
SymmetryCheck check_h3_symmetry(const ReactionModel& m, int sample_count = 100,
                                unsigned long long seed = 12345);

std::vector<LabeledEquilibrium> equilibria(const ReactionModel& m);

/// Diffusion matrix plus the perturbation direction.
struct DiffusionSpec {
    Mat D;
    Mat Dbar;

    /// Throws ConfigError unless D is symmetric positive definite.
    void validate() const;
    /// Hypothesis on the perturbation: S Dbar = -Dbar S and Dbar != 0, i.e.
    /// Dbar = diag(d, -d) with d != 0 (dim 2 only).
    bool dbar_is_h4() const;
    Mat effective(double eps) const { return D.plus_scaled(Dbar, eps); }
};

}  // namespace frontlab
