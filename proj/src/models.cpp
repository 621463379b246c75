#include "frontlab/models.hpp"

#include <cmath>
#include <random>

#include "frontlab/errors.hpp"

namespace frontlab {

Mat Mat::identity(int dim) {
    Mat m;
    m.dim = dim;
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::diag(double d1, double d2) {
    Mat m;
    m.dim = 2;
    m(0, 0) = d1;
    m(1, 1) = d2;
    return m;
}

Mat Mat::scalar1(double d) {
    Mat m;
    m.dim = 1;
    m.a[0] = d;
    return m;
}

void Mat::apply(const double* x, double* y) const {
    if (dim == 1) {
        y[0] = a[0] * x[0];
        return;
    }
    const double x0 = x[0], x1 = x[1];
    y[0] = a[0] * x0 + a[1] * x1;
    y[1] = a[2] * x0 + a[3] * x1;
}

Mat Mat::plus_scaled(const Mat& other, double s) const {
    Mat m = *this;
    for (int i = 0; i < dim * dim; ++i) m.a[i] += s * other.a[i];
    return m;
}

bool Mat::symmetric(double tol) const {
    if (dim == 1) return true;
    return std::fabs(a[1] - a[2]) <= tol;
}

double Mat::max_real_eigenvalue() const {
    if (dim == 1) return a[0];
    const double tr = a[0] + a[3];
    const double det = a[0] * a[3] - a[1] * a[2];
    const double disc = tr * tr / 4.0 - det;
    if (disc >= 0.0) return tr / 2.0 + std::sqrt(disc);
    return tr / 2.0;
}

double Mat::min_abs_eigenvalue() const {
    if (dim == 1) return std::fabs(a[0]);
    const double tr = a[0] + a[3];
    const double det = a[0] * a[3] - a[1] * a[2];
    const double disc = tr * tr / 4.0 - det;
    if (disc < 0.0) return std::sqrt(det);  // complex pair, |lambda|^2 = det
    const double r = std::sqrt(disc);
    return std::min(std::fabs(tr / 2.0 + r), std::fabs(tr / 2.0 - r));
}

double Mat::max_abs_eigenvalue() const {
    if (dim == 1) return std::fabs(a[0]);
    const double tr = a[0] + a[3];
    const double det = a[0] * a[3] - a[1] * a[2];
    const double disc = tr * tr / 4.0 - det;
    if (disc < 0.0) return std::sqrt(det);
    const double r = std::sqrt(disc);
    return std::max(std::fabs(tr / 2.0 + r), std::fabs(tr / 2.0 - r));
}

const char* stability_name(Stability s) {
    switch (s) {
        case Stability::stable: return "stable";
        case Stability::saddle: return "saddle";
        case Stability::unstable: return "unstable";
    }
    return "?";
}

namespace {

double require_param(const std::map<std::string, double>& p, const std::string& key,
                     const std::string& model) {
    auto it = p.find(key);
    if (it == p.end())
        throw ConfigError("model '" + model + "' requires parameter '" + key + "'");
    return it->second;
}

// Toy bistable system, canonical coordinates. The two components are written
// through one mirrored helper so the u1<->u2 exchange symmetry holds to the
// last bit.
double toy_component(double a, double b, double mu) {
    return a * (1.0 - (a + b) - mu * b * (b - a));
}

ReactionModel make_toy(double mu) {
    ReactionModel m;
    m.name = "toy";
    m.dim = 2;
    m.params["mu"] = mu;
    m.has_u1u2_symmetry = true;
    m.react = [mu](const double* u, const double*, double* out) {
        out[0] = toy_component(u[0], u[1], mu);
        out[1] = toy_component(u[1], u[0], mu);
    };
    m.jacobian = [mu](const double* u, const double*, double* dfu, double* dfux) {
        const double u1 = u[0], u2 = u[1];
        dfu[0] = 1.0 - 2.0 * u1 - u2 - mu * u2 * (u2 - u1) + mu * u1 * u2;
        dfu[1] = u1 * (-1.0 - 2.0 * mu * u2 + mu * u1);
        dfu[2] = u2 * (-1.0 - 2.0 * mu * u1 + mu * u2);
        dfu[3] = 1.0 - 2.0 * u2 - u1 - mu * u1 * (u1 - u2) + mu * u1 * u2;
        if (dfux != nullptr) dfux[0] = dfux[1] = dfux[2] = dfux[3] = 0.0;
    };
    m.equilibria_list = {{"E1", {1.0, 0.0}},
                         {"E2", {0.0, 1.0}},
                         {"E0", {0.5, 0.5}},
                         {"origin", {0.0, 0.0}}};
    return m;
}

double lv_component(double a, double b, double mu) { return a * (1.0 - a - (1.0 + mu) * b); }

ReactionModel make_lv(double mu) {
    ReactionModel m;
    m.name = "lotka_volterra";
    m.dim = 2;
    m.params["mu"] = mu;
    m.has_u1u2_symmetry = true;
    m.react = [mu](const double* u, const double*, double* out) {
        out[0] = lv_component(u[0], u[1], mu);
        out[1] = lv_component(u[1], u[0], mu);
    };
    m.jacobian = [mu](const double* u, const double*, double* dfu, double* dfux) {
        dfu[0] = 1.0 - 2.0 * u[0] - (1.0 + mu) * u[1];
        dfu[1] = -(1.0 + mu) * u[0];
        dfu[2] = -(1.0 + mu) * u[1];
        dfu[3] = 1.0 - 2.0 * u[1] - (1.0 + mu) * u[0];
        if (dfux != nullptr) dfux[0] = dfux[1] = dfux[2] = dfux[3] = 0.0;
    };
    const double w = 1.0 / (2.0 + mu);
    m.equilibria_list = {{"E1", {1.0, 0.0}},
                         {"E2", {0.0, 1.0}},
                         {"E0", {w, w}},
                         {"origin", {0.0, 0.0}}};
    return m;
}

ReactionModel make_nagumo(double a) {
    ReactionModel m;
    m.name = "nagumo";
    m.dim = 1;
    m.params["a"] = a;
    m.react = [a](const double* u, const double*, double* out) {
        out[0] = u[0] * (1.0 - u[0]) * (u[0] - a);
    };
    m.jacobian = [a](const double* u, const double*, double* dfu, double* dfux) {
        const double w = u[0];
        dfu[0] = -3.0 * w * w + 2.0 * (1.0 + a) * w - a;
        if (dfux != nullptr) dfux[0] = 0.0;
    };
    m.equilibria_list = {{"zero", {0.0, 0.0}}, {"a", {a, 0.0}}, {"one", {1.0, 0.0}}};
    return m;
}

// Ginzburg-Landau in polar coordinates with the amplitude written as
// rho = 1 + eps^2 r; components are (r, theta). The reaction term depends on
// the spatial gradient, so the model is gradient coupled.
ReactionModel make_gl(double eps, double omega) {
    if (eps <= 0.0) throw ConfigError("ginzburg_landau_polar: epsilon must be positive");
    if (std::fabs(omega) >= 1.0)
        throw ConfigError("ginzburg_landau_polar: omega must lie in (-1, 1)");
    ReactionModel m;
    m.name = "ginzburg_landau_polar";
    m.dim = 2;
    m.params["epsilon"] = eps;
    m.params["omega"] = omega;
    m.gradient_coupled = true;
    const double e2 = eps * eps;
    m.react = [e2, omega](const double* u, const double* ux, double* out) {
        const double r = u[0], th = u[1];
        const double rx = ux != nullptr ? ux[0] : 0.0;
        const double tx = ux != nullptr ? ux[1] : 0.0;
        const double rho = 1.0 + e2 * r;
        out[0] = -r * rho * (2.0 + e2 * r) + rho * std::cos(2.0 * th) - rho * tx * tx / e2;
        out[1] = e2 * (omega - std::sin(2.0 * th)) + 2.0 * e2 * rx * tx / rho;
    };
    m.jacobian = [e2](const double* u, const double* ux, double* dfu, double* dfux) {
        const double r = u[0], th = u[1];
        const double rx = ux != nullptr ? ux[0] : 0.0;
        const double tx = ux != nullptr ? ux[1] : 0.0;
        const double rho = 1.0 + e2 * r;
        dfu[0] = 1.0 - 3.0 * rho * rho + e2 * std::cos(2.0 * th) - tx * tx;
        dfu[1] = -2.0 * rho * std::sin(2.0 * th);
        dfu[2] = -2.0 * e2 * e2 * rx * tx / (rho * rho);
        dfu[3] = -2.0 * e2 * std::cos(2.0 * th);
        if (dfux != nullptr) {
            dfux[0] = 0.0;
            dfux[1] = -2.0 * rho * tx / e2;
            dfux[2] = 2.0 * e2 * tx / rho;
            dfux[3] = 2.0 * e2 * rx / rho;
        }
    };
    auto rstar = [e2](double th) { return (-1.0 + std::sqrt(1.0 + e2 * std::cos(2.0 * th))) / e2; };
    const double thm = 0.5 * std::asin(omega);
    const double ths = M_PI / 2.0 - thm;
    m.equilibria_list = {{"stable_minus", {rstar(thm), thm}},
                         {"saddle_plus", {rstar(ths), ths}},
                         {"stable_plus", {rstar(thm + M_PI), thm + M_PI}},
                         {"saddle_minus", {rstar(-M_PI / 2.0 - thm), -M_PI / 2.0 - thm}}};
    return m;
}

}  // namespace

ReactionModel make_model(const std::string& name, const std::map<std::string, double>& params) {
    if (name == "toy") return make_toy(require_param(params, "mu", name));
    if (name == "lotka_volterra") {
        if (params.count("mu")) return make_lv(params.at("mu"));
        if (params.count("eps")) {
            const double e = params.at("eps");
            ReactionModel m = make_lv(e * e);
            m.params["eps"] = e;
            return m;
        }
        throw ConfigError("model 'lotka_volterra' requires parameter 'mu' (or 'eps')");
    }
    if (name == "nagumo") return make_nagumo(require_param(params, "a", name));
    if (name == "ginzburg_landau_polar")
        return make_gl(require_param(params, "epsilon", name),
                       require_param(params, "omega", name));
    throw ConfigError("unknown model '" + name + "'");
}

std::array<double, 2> eval_reaction(const ReactionModel& m, const std::array<double, 2>& u) {
    std::array<double, 2> out{};
    const double ux[2] = {0.0, 0.0};
    m.react(u.data(), ux, out.data());
    return out;
}

Mat eval_jacobian(const ReactionModel& m, const std::array<double, 2>& u) {
    Mat j;
    j.dim = m.dim;
    double jux[4];
    const double ux[2] = {0.0, 0.0};
    m.jacobian(u.data(), ux, j.a.data(), jux);
    return j;
}

double rot_f(const ReactionModel& m, const std::array<double, 2>& u) {
    if (m.dim != 2) throw ConfigError("rot_f: model dimension must be 2");
    const Mat j = eval_jacobian(m, u);
    return j(1, 0) - j(0, 1);
}

double rot_f_tl(const ReactionModel& m, const std::array<double, 2>& v) {
    if (m.dim != 2) throw ConfigError("rot_f_tl: model dimension must be 2");
    // DG = P DF P^{-1} with P = [[1,1],[-1,1]].
    const Mat j = eval_jacobian(m, from_tl(v));
    const double g10 = 0.5 * (-(j(0, 0) + j(0, 1)) + (j(1, 0) + j(1, 1)));
    const double g01 = 0.5 * ((j(0, 0) - j(0, 1)) + (j(1, 0) - j(1, 1))) * -1.0;
    // g01 above: row T of DG applied to e_L.
    return g10 - g01;
}

std::array<double, 2> to_tl(const std::array<double, 2>& u) {
    return {u[0] + u[1], -u[0] + u[1]};
}

std::array<double, 2> from_tl(const std::array<double, 2>& v) {
    return {(v[0] - v[1]) / 2.0, (v[0] + v[1]) / 2.0};
}

std::array<double, 2> convert_frame(const std::array<double, 2>& p, CoordinateFrame from,
                                    CoordinateFrame to) {
    if (from == to) return p;
    return from == CoordinateFrame::canonical ? to_tl(p) : from_tl(p);
}

SymmetryCheck check_h3_symmetry(const ReactionModel& m, int sample_count,
                                unsigned long long seed) {
    SymmetryCheck res;
    if (m.dim != 2) return res;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    const double ux[2] = {0.0, 0.0};
    for (int s = 0; s < sample_count; ++s) {
        const double u[2] = {dist(rng), dist(rng)};
        const double su[2] = {u[1], u[0]};
        double fu[2], fsu[2];
        m.react(u, ux, fu);
        m.react(su, ux, fsu);
        res.max_defect = std::max(res.max_defect, std::fabs(fsu[0] - fu[1]));
        res.max_defect = std::max(res.max_defect, std::fabs(fsu[1] - fu[0]));
    }
    res.pass = res.max_defect < 1e-12;
    return res;
}

std::vector<LabeledEquilibrium> equilibria(const ReactionModel& m) {
    std::vector<LabeledEquilibrium> out;
    for (const auto& e : m.equilibria_list) {
        LabeledEquilibrium le;
        le.label = e.label;
        le.u = e.u;
        const Mat j = eval_jacobian(m, e.u);
        if (m.dim == 1) {
            le.stability = j.a[0] < 0.0 ? Stability::stable : Stability::unstable;
        } else {
            const double det = j(0, 0) * j(1, 1) - j(0, 1) * j(1, 0);
            const double tr = j(0, 0) + j(1, 1);
            if (det < 0.0)
                le.stability = Stability::saddle;
            else
                le.stability = tr < 0.0 ? Stability::stable : Stability::unstable;
        }
        out.push_back(le);
    }
    return out;
}

void DiffusionSpec::validate() const {
    if (!D.symmetric(1e-12)) throw ConfigError("diffusion matrix D must be symmetric");
    if (D.dim == 1) {
        if (D.a[0] <= 0.0) throw ConfigError("diffusion matrix D must be positive definite");
        return;
    }
    const double tr = D(0, 0) + D(1, 1);
    const double det = D(0, 0) * D(1, 1) - D(0, 1) * D(1, 0);
    if (!(tr > 0.0 && det > 0.0))
        throw ConfigError("diffusion matrix D must be positive definite");
    if (!Dbar.symmetric(1e-12)) throw ConfigError("perturbation matrix Dbar must be symmetric");
}

bool DiffusionSpec::dbar_is_h4() const {
    if (Dbar.dim != 2) return false;
    const double off = std::max(std::fabs(Dbar(0, 1)), std::fabs(Dbar(1, 0)));
    const double anti = std::fabs(Dbar(0, 0) + Dbar(1, 1));
    const double mag = std::fabs(Dbar(0, 0));
    return off < 1e-14 && anti < 1e-14 && mag > 0.0;
}

}  // namespace frontlab
