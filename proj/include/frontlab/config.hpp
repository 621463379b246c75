#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "frontlab/models.hpp"

namespace frontlab {

/// Run tolerances, all overridable from the config file.
struct Tolerances {
    double newton = 1e-12;
    double cross_check = 1e-6;      // solvency vs rot expression
    double halfline = 1e-7;         // half-line vs full-line
    double symmetry = 1e-6;         // gate for half-line formulas
};

/// One run of the laboratory, as parsed from the line-oriented
/// `[section]` / `key = value` config format.
struct RunConfig {
    std::string command;  // front | spectrum | sensitivity | simulate | sweep | validate
    std::string model_name;
    std::map<std::string, double> params;

    bool grid_auto = false;
    double L = 40.0;
    int N = 1601;

    std::vector<double> D;     // row-major, dim*dim entries (or empty = identity)
    std::vector<double> Dbar;  // row-major (or empty = diag(1,-1))
    std::vector<double> eps_list;

    std::string sweep_param;
    std::vector<double> sweep_values;

    double sim_T = 0.0;  // 0 = auto
    double sim_dt = 0.0; // 0 = auto
    int frame_every = 0;

    Tolerances tol;
    std::string out_prefix = "frontlab_out";
    std::uint64_t seed = 12345;

    /// Where each key's value came from: "config", "default" or "override".
    std::map<std::string, std::string> provenance;

    /// Materialize the model (and its dimension). Throws ConfigError.
    ReactionModel make() const;
    DiffusionSpec diffusion(int dim) const;
};

/// Parses the config text; unknown sections/keys and malformed values are
/// ConfigErrors naming the line. Defaults are filled and recorded in
/// `provenance`.
RunConfig parse_config(const std::string& text);

/// Applies repeatable `section.key=value` overrides.
void apply_override(RunConfig& cfg, const std::string& assignment);

/// Canonical serialization; parse(serialize(cfg)) round-trips byte-identically.
std::string serialize_config(const RunConfig& cfg);

}  // namespace frontlab
