#include "frontlab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "frontlab/errors.hpp"

namespace frontlab {

namespace {

const std::vector<std::string> kCommands = {"front",    "spectrum", "sensitivity",
                                            "simulate", "sweep",    "validate"};

// Parameter keys accepted in [model] per model name.
const std::map<std::string, std::vector<std::string>> kModelParams = {
    {"toy", {"mu"}},
    {"lotka_volterra", {"mu", "eps"}},
    {"nagumo", {"a"}},
    {"ginzburg_landau_polar", {"epsilon", "omega"}},
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config line " + std::to_string(line) + ": expected a number, got '" +
                          v + "'");
    }
}

long parse_int(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        const long d = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config line " + std::to_string(line) + ": expected an integer, got '" +
                          v + "'");
    }
}

std::vector<double> parse_list(const std::string& v, int line) {
    std::vector<double> out;
    std::istringstream iss(v);
    std::string tok;
    while (iss >> tok) out.push_back(parse_double(tok, line));
    return out;
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("config line " + std::to_string(line) + ": expected true/false, got '" + v +
                      "'");
}

std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt_list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += fmt(v[i]);
    }
    return s;
}

void set_key(RunConfig& cfg, const std::string& section, const std::string& key,
             const std::string& value, int line, const std::string& origin) {
    const std::string full = section + "." + key;
    auto mark = [&] { cfg.provenance[full] = origin; };
    if (section == "run") {
        if (key == "command") {
            if (std::find(kCommands.begin(), kCommands.end(), value) == kCommands.end())
                throw ConfigError("config line " + std::to_string(line) + ": unknown command '" +
                                  value + "'");
            cfg.command = value;
            return mark();
        }
        if (key == "out") {
            cfg.out_prefix = value;
            return mark();
        }
        if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_int(value, line));
            return mark();
        }
    } else if (section == "model") {
        if (key == "name") {
            if (kModelParams.find(value) == kModelParams.end())
                throw ConfigError("config line " + std::to_string(line) + ": unknown model '" +
                                  value + "'");
            cfg.model_name = value;
            return mark();
        }
        // model parameter: validated against the model's parameter list once
        // the name is known (parse_config checks afterwards)
        cfg.params[key] = parse_double(value, line);
        return mark();
    } else if (section == "grid") {
        if (key == "auto") {
            cfg.grid_auto = parse_bool(value, line);
            return mark();
        }
        if (key == "L") {
            cfg.L = parse_double(value, line);
            if (!(cfg.L > 0.0))
                throw ConfigError("config line " + std::to_string(line) +
                                  ": grid.L must be positive");
            return mark();
        }
        if (key == "N") {
            const long n = parse_int(value, line);
            if (n < 3 || n % 2 == 0)
                throw ConfigError("config line " + std::to_string(line) +
                                  ": grid.N must be odd and >= 3 (got " + value + ")");
            cfg.N = static_cast<int>(n);
            return mark();
        }
    } else if (section == "diffusion") {
        if (key == "D") {
            cfg.D = parse_list(value, line);
            return mark();
        }
        if (key == "Dbar") {
            cfg.Dbar = parse_list(value, line);
            return mark();
        }
        if (key == "eps_list") {
            cfg.eps_list = parse_list(value, line);
            return mark();
        }
    } else if (section == "sweep") {
        if (key == "param") {
            cfg.sweep_param = value;
            return mark();
        }
        if (key == "values") {
            cfg.sweep_values = parse_list(value, line);
            return mark();
        }
    } else if (section == "sim") {
        if (key == "T") {
            cfg.sim_T = parse_double(value, line);
            return mark();
        }
        if (key == "dt") {
            cfg.sim_dt = parse_double(value, line);
            return mark();
        }
        if (key == "frame_every") {
            cfg.frame_every = static_cast<int>(parse_int(value, line));
            return mark();
        }
    } else if (section == "tolerances") {
        if (key == "newton") {
            cfg.tol.newton = parse_double(value, line);
            return mark();
        }
        if (key == "cross_check") {
            cfg.tol.cross_check = parse_double(value, line);
            return mark();
        }
        if (key == "halfline") {
            cfg.tol.halfline = parse_double(value, line);
            return mark();
        }
        if (key == "symmetry") {
            cfg.tol.symmetry = parse_double(value, line);
            return mark();
        }
    } else {
        throw ConfigError("config line " + std::to_string(line) + ": unknown section [" +
                          section + "]");
    }
    throw ConfigError("config line " + std::to_string(line) + ": unknown key '" + key +
                      "' in section [" + section + "]");
}

void fill_defaults(RunConfig& cfg) {
    const char* keys[] = {"run.command",     "run.out",        "run.seed",      "model.name",
                          "grid.auto",       "grid.L",         "grid.N",        "diffusion.D",
                          "diffusion.Dbar",  "diffusion.eps_list", "sweep.param",
                          "sweep.values",    "sim.T",          "sim.dt",        "sim.frame_every",
                          "tolerances.newton", "tolerances.cross_check", "tolerances.halfline",
                          "tolerances.symmetry"};
    for (const char* k : keys)
        if (cfg.provenance.find(k) == cfg.provenance.end()) cfg.provenance[k] = "default";
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream iss(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(iss, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError("config line " + std::to_string(line) +
                                  ": malformed section header '" + raw + "'");
            section = trim(s.substr(1, s.size() - 2));
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line) +
                              ": expected 'key = value', got '" + raw + "'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (section.empty())
            throw ConfigError("config line " + std::to_string(line) +
                              ": key '" + key + "' outside any [section]");
        set_key(cfg, section, key, value, line, "config");
    }
    if (cfg.model_name.empty()) throw ConfigError("config: [model] name is required");
    // reject parameters the named model does not take
    const auto& allowed = kModelParams.at(cfg.model_name);
    for (const auto& [k, v] : cfg.params)
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw ConfigError("config: model '" + cfg.model_name +
                              "' does not take parameter '" + k + "'");
    fill_defaults(cfg);
    return cfg;
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override '" + assignment + "': expected section.key=value");
    const std::string path = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    const auto dot = path.find('.');
    if (dot == std::string::npos)
        throw ConfigError("override '" + assignment + "': expected section.key=value");
    set_key(cfg, path.substr(0, dot), path.substr(dot + 1), value, 0, "override");
    if (!cfg.model_name.empty()) {
        const auto& allowed = kModelParams.at(cfg.model_name);
        for (const auto& [k, v] : cfg.params)
            if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
                throw ConfigError("override: model '" + cfg.model_name +
                                  "' does not take parameter '" + k + "'");
    }
}

std::string serialize_config(const RunConfig& cfg) {
    std::string s;
    s += "[run]\n";
    s += "command = " + cfg.command + "\n";
    s += "out = " + cfg.out_prefix + "\n";
    s += "seed = " + std::to_string(cfg.seed) + "\n";
    s += "\n[model]\n";
    s += "name = " + cfg.model_name + "\n";
    for (const auto& [k, v] : cfg.params) s += k + " = " + fmt(v) + "\n";
    s += "\n[grid]\n";
    s += std::string("auto = ") + (cfg.grid_auto ? "true" : "false") + "\n";
    s += "L = " + fmt(cfg.L) + "\n";
    s += "N = " + std::to_string(cfg.N) + "\n";
    s += "\n[diffusion]\n";
    if (!cfg.D.empty()) s += "D = " + fmt_list(cfg.D) + "\n";
    if (!cfg.Dbar.empty()) s += "Dbar = " + fmt_list(cfg.Dbar) + "\n";
    if (!cfg.eps_list.empty()) s += "eps_list = " + fmt_list(cfg.eps_list) + "\n";
    if (!cfg.sweep_param.empty() || !cfg.sweep_values.empty()) {
        s += "\n[sweep]\n";
        if (!cfg.sweep_param.empty()) s += "param = " + cfg.sweep_param + "\n";
        if (!cfg.sweep_values.empty()) s += "values = " + fmt_list(cfg.sweep_values) + "\n";
    }
    s += "\n[sim]\n";
    s += "T = " + fmt(cfg.sim_T) + "\n";
    s += "dt = " + fmt(cfg.sim_dt) + "\n";
    s += "frame_every = " + std::to_string(cfg.frame_every) + "\n";
    s += "\n[tolerances]\n";
    s += "newton = " + fmt(cfg.tol.newton) + "\n";
    s += "cross_check = " + fmt(cfg.tol.cross_check) + "\n";
    s += "halfline = " + fmt(cfg.tol.halfline) + "\n";
    s += "symmetry = " + fmt(cfg.tol.symmetry) + "\n";
    return s;
}

ReactionModel RunConfig::make() const { return make_model(model_name, params); }

DiffusionSpec RunConfig::diffusion(int dim) const {
    DiffusionSpec spec;
    spec.D = Mat::identity(dim);
    spec.Dbar.dim = dim;
    if (dim == 2) {
        spec.Dbar = Mat::diag(1.0, -1.0);
    } else {
        spec.Dbar.a[0] = 0.0;
    }
    auto fill = [dim](Mat& m, const std::vector<double>& v, const char* what) {
        if (v.empty()) return;
        if (static_cast<int>(v.size()) != dim * dim)
            throw ConfigError(std::string("diffusion.") + what + ": expected " +
                              std::to_string(dim * dim) + " entries, got " +
                              std::to_string(v.size()));
        m.dim = dim;
        std::copy(v.begin(), v.end(), m.a.begin());
    };
    fill(spec.D, D, "D");
    fill(spec.Dbar, Dbar, "Dbar");
    spec.validate();
    return spec;
}

}  // namespace frontlab
