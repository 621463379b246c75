#include "frontlab/cli.hpp"

#include <cmath>
#include <iostream>

#include "frontlab/csv_io.hpp"
#include "frontlab/errors.hpp"
#include "frontlab/pde_sim.hpp"
#include "frontlab/scenarios.hpp"
#include "frontlab/sensitivity.hpp"
#include "frontlab/spectral.hpp"

namespace frontlab {

namespace {

using KV = std::vector<std::pair<std::string, std::string>>;

Grid resolve_grid(const RunConfig& cfg, const ReactionModel& model, const Mat& D) {
    if (cfg.grid_auto) return auto_grid(model, D);
    return build_grid(cfg.L, cfg.N);
}

void summary(const RunConfig& cfg, const KV& fields) {
    std::cout << "frontlab-summary command=" << cfg.command << " model=" << cfg.model_name;
    for (const auto& [k, v] : fields) std::cout << ' ' << k << '=' << v;
    std::cout << " status=ok\n";
}

int cmd_front(const RunConfig& cfg, const std::string& echo) {
    const ReactionModel model = cfg.make();
    const DiffusionSpec diff = cfg.diffusion(model.dim);
    if (model.name == "ginzburg_landau_polar") {
        Grid grid = cfg.grid_auto
                        ? build_grid(24.0 / (model.params.at("epsilon") *
                                             std::sqrt(2.0 * std::sqrt(1.0 - model.params.at("omega") *
                                                                                 model.params.at("omega")))),
                                     1601)
                        : build_grid(cfg.L, cfg.N);
        const auto pair =
            gl_front_pair(model.params.at("epsilon"), model.params.at("omega"), grid);
        for (int b = 0; b < 2; ++b) {
            const FrontSolution& f = b == 0 ? pair.first : pair.second;
            write_profile_csv(cfg.out_prefix + "_front" + std::to_string(b + 1) + ".csv", f.phi,
                              {{"model", model.name},
                               {"c", format_double(f.speed)},
                               {"residual", format_double(f.residual_norm)}},
                              echo);
        }
        summary(cfg, {{"c1", format_double(pair.first.speed)},
                      {"c2", format_double(pair.second.speed)}});
        return exit_ok;
    }
    const Grid grid = resolve_grid(cfg, model, diff.D);
    NewtonOptions nopts;
    nopts.tol = cfg.tol.newton;
    const FrontSolution f = solve_default_front(model, diff.D, grid, nopts);
    std::vector<std::pair<std::string, std::string>> meta = {
        {"model", model.name},
        {"c", format_double(f.speed)},
        {"residual", format_double(f.residual_norm)},
        {"boundary_defect", format_double(f.boundary_defect)}};
    for (const auto& [k, v] : model.params) meta.emplace_back(k, format_double(v));
    write_profile_csv(cfg.out_prefix + "_profile.csv", f.phi, meta, echo);
    summary(cfg, {{"c", format_double(f.speed)},
                  {"residual", format_double(f.residual_norm)},
                  {"L", format_double(grid.L)},
                  {"N", std::to_string(grid.N)}});
    return exit_ok;
}

int cmd_spectrum(const RunConfig& cfg, const std::string& echo) {
    const ReactionModel model = cfg.make();
    const DiffusionSpec diff = cfg.diffusion(model.dim);
    const auto states = default_front_states(model);
    const EssentialReport ess =
        essential_spectrum_check(model, diff.D, states.first, states.second);
    KV kv = {{"essential_bound", format_double(ess.bound)},
             {"k_worst", format_double(ess.k_worst)},
             {"k_max", format_double(ess.k_max)},
             {"h1_pass", ess.pass ? "1" : "0"}};
    if (!ess.pass) {
        write_report_kv(cfg.out_prefix + "_spectrum.txt", kv, echo);
        std::cerr << "frontlab: H1 fails, essential spectrum bound " << ess.bound << " at k = "
                  << ess.k_worst << "\n";
        return exit_hypothesis;
    }
    const Grid grid = resolve_grid(cfg, model, diff.D);
    const FrontSolution f = solve_default_front(model, diff.D, grid);
    const SpectralReport rep = [&] {
        SpectralReport r = zero_multiplicity_and_gap(assemble_linearized(f, model, diff.D), f);
        r.essential_bound = ess.bound;
        r.h1_pass = ess.pass;
        return r;
    }();
    const KernelResult ker = kernel_adjoint(assemble_adjoint(f, model, diff.D), f);
    kv.insert(kv.end(), {{"zero_eig_estimate", format_double(rep.zero_eig_estimate)},
                         {"spectral_gap", format_double(rep.spectral_gap)},
                         {"kernel_angle", format_double(rep.kernel_angle)},
                         {"rightmost_nonzero_real_part",
                          format_double(rep.rightmost_nonzero_real_part)},
                         {"h2_pass", rep.h2_pass ? "1" : "0"},
                         {"stable_pass", rep.stable_pass ? "1" : "0"},
                         {"eigen_iterations", std::to_string(rep.iterations)},
                         {"psi_residual", format_double(ker.residual)}});
    write_report_kv(cfg.out_prefix + "_spectrum.txt", kv, echo);
    write_profile_csv(cfg.out_prefix + "_psi.csv", ker.psi,
                      {{"model", model.name}, {"object", "adjoint_kernel"}}, echo);
    summary(cfg, {{"essential_bound", format_double(ess.bound)},
                  {"zero_eig", format_double(rep.zero_eig_estimate)},
                  {"gap", format_double(rep.spectral_gap)}});
    if (!rep.h2_pass || !rep.stable_pass) return exit_hypothesis;
    return exit_ok;
}

SweepRow report_to_row(double value, const SensitivityReport& rep) {
    SweepRow row;
    row.mu_or_eps = value;
    row.cbar_solvency = rep.cbar_solvency;
    row.cbar_alt = rep.cbar_alternative;
    row.cbar_half_s = rep.cbar_halfline_solvency;
    row.cbar_half_rot = rep.cbar_halfline_rot;
    row.orth_defect = rep.orthogonality_defect;
    auto get = [&](const char* k) {
        auto it = rep.symmetry_defects.find(k);
        return it != rep.symmetry_defects.end() ? it->second : 0.0;
    };
    row.sym_defect_psi = get("psi_antisym");
    row.sym_defect_phibar = get("phibar_antisym");
    return row;
}

int cmd_sensitivity(const RunConfig& cfg, const std::string& echo) {
    const ReactionModel model = cfg.make();
    const DiffusionSpec diff = cfg.diffusion(model.dim);
    const Grid grid = resolve_grid(cfg, model, diff.D);
    SensitivityOptions opts;
    opts.newton.tol = cfg.tol.newton;
    opts.symmetry_tol = cfg.tol.symmetry;
    const SensitivityReport rep = full_report(model, diff, grid, opts);
    KV kv = {{"cbar_solvency", format_double(rep.cbar_solvency)},
             {"cbar_alternative", format_double(rep.cbar_alternative)},
             {"cbar_halfline_solvency", format_double(rep.cbar_halfline_solvency)},
             {"cbar_halfline_rot", format_double(rep.cbar_halfline_rot)},
             {"halfline_valid", rep.halfline_valid ? "1" : "0"},
             {"orthogonality_defect", format_double(rep.orthogonality_defect)},
             {"front_speed", format_double(rep.front.speed)},
             {"front_residual", format_double(rep.front.residual_norm)},
             {"essential_bound", format_double(rep.spectral.essential_bound)},
             {"zero_eig_estimate", format_double(rep.spectral.zero_eig_estimate)},
             {"spectral_gap", format_double(rep.spectral.spectral_gap)}};
    for (const auto& [k, v] : rep.symmetry_defects)
        kv.emplace_back("sym_" + k, format_double(v));
    write_report_kv(cfg.out_prefix + "_sensitivity.txt", kv, echo);
    write_profile_csv(cfg.out_prefix + "_profile.csv", rep.front.phi,
                      {{"model", model.name}, {"c", format_double(rep.front.speed)}}, echo);
    write_profile_csv(cfg.out_prefix + "_psi.csv", rep.psi,
                      {{"model", model.name}, {"object", "adjoint_kernel"}}, echo);
    write_profile_csv(cfg.out_prefix + "_phibar.csv", rep.phibar,
                      {{"model", model.name}, {"object", "first_order_profile"}}, echo);
    summary(cfg, {{"cbar", format_double(rep.cbar_solvency)},
                  {"cbar_alt", format_double(rep.cbar_alternative)}});
    return exit_ok;
}

int cmd_sweep(const RunConfig& cfg, const std::string& echo) {
    if (cfg.sweep_param.empty() || cfg.sweep_values.empty())
        throw ConfigError("sweep: [sweep] param and values are required");
    std::vector<SweepRow> rows;
    for (double v : cfg.sweep_values) {
        RunConfig c = cfg;
        if (cfg.sweep_param == "eps" && cfg.model_name == "lotka_volterra") c.params.erase("mu");
        if (cfg.sweep_param == "mu") c.params.erase("eps");
        c.params[cfg.sweep_param] = v;
        const ReactionModel model = c.make();
        const DiffusionSpec diff = c.diffusion(model.dim);
        const Grid grid = resolve_grid(c, model, diff.D);
        SensitivityOptions opts;
        opts.newton.tol = cfg.tol.newton;
        opts.symmetry_tol = cfg.tol.symmetry;
        opts.run_eigen = false;
        rows.push_back(report_to_row(v, full_report(model, diff, grid, opts)));
    }
    write_sweep_csv(cfg.out_prefix + "_sweep.csv", rows, echo);
    summary(cfg, {{"rows", std::to_string(rows.size())}});
    return exit_ok;
}

int cmd_simulate(const RunConfig& cfg, const std::string& echo) {
    const ReactionModel model = cfg.make();
    const DiffusionSpec diff = cfg.diffusion(model.dim);
    const Grid grid = resolve_grid(cfg, model, diff.D);
    const double eps = cfg.eps_list.empty() ? 0.0 : cfg.eps_list.front();
    const double T = cfg.sim_T > 0.0 ? cfg.sim_T : 200.0;
    SimOptions opts;
    opts.dt = cfg.sim_dt;
    if (cfg.frame_every > 0) {
        opts.frame_every = cfg.frame_every;
        const std::string prefix = cfg.out_prefix;
        const std::string config_echo = echo;
        const std::string model_name = cfg.model_name;
        opts.frame_hook = [prefix, config_echo, model_name](const Profile& field, double t,
                                                            int step) {
            char idx[16];
            std::snprintf(idx, sizeof(idx), "%06d", step);
            write_profile_csv(prefix + "_frame_" + idx + ".csv", field,
                              {{"model", model_name}, {"t", format_double(t)}}, config_echo);
        };
    }
    const FrontTrack tr = measure_speed(model, diff.D, diff.Dbar, eps, grid, T, opts);
    write_track_csv(cfg.out_prefix + "_track.csv", tr, echo);
    summary(cfg, {{"speed", format_double(tr.speed)},
                  {"resolution", format_double(tr.resolution)},
                  {"below_resolution", tr.below_resolution ? "1" : "0"}});
    return exit_ok;
}

int cmd_validate(const RunConfig& cfg, const std::string& echo) {
    const ReactionModel model = cfg.make();
    const DiffusionSpec diff = cfg.diffusion(model.dim);
    const Grid grid = resolve_grid(cfg, model, diff.D);
    SensitivityOptions sopts;
    sopts.newton.tol = cfg.tol.newton;
    sopts.run_eigen = false;
    const SensitivityReport rep = full_report(model, diff, grid, sopts);
    const std::vector<double> eps =
        cfg.eps_list.empty() ? std::vector<double>{0.02, 0.05} : cfg.eps_list;
    SimOptions opts;
    opts.dt = cfg.sim_dt;
    const auto rows =
        validate_sensitivity(model, diff.D, diff.Dbar, grid, eps, rep.cbar_solvency, cfg.sim_T,
                             opts);
    write_validate_csv(cfg.out_prefix + "_validate.csv", rows, echo);
    KV fields = {{"cbar", format_double(rep.cbar_solvency)}};
    for (const auto& r : rows)
        fields.emplace_back("rel_error_eps" + format_double(r.eps), format_double(r.rel_error));
    summary(cfg, fields);
    return exit_ok;
}

}  // namespace

int run(const RunConfig& cfg) {
    const std::string echo = serialize_config(cfg);
    try {
        if (cfg.command == "front") return cmd_front(cfg, echo);
        if (cfg.command == "spectrum") return cmd_spectrum(cfg, echo);
        if (cfg.command == "sensitivity") return cmd_sensitivity(cfg, echo);
        if (cfg.command == "sweep") return cmd_sweep(cfg, echo);
        if (cfg.command == "simulate") return cmd_simulate(cfg, echo);
        if (cfg.command == "validate") return cmd_validate(cfg, echo);
        throw ConfigError("no command given (expected front, spectrum, sensitivity, simulate, "
                          "sweep or validate)");
    } catch (const ConfigError& e) {
        std::cerr << "frontlab: config error: " << e.what() << "\n";
        return exit_config;
    } catch (const ConvergenceError& e) {
        std::cerr << "frontlab: nonconvergence: " << e.what() << "\n";
        return exit_nonconvergence;
    } catch (const HypothesisError& e) {
        std::cerr << "frontlab: hypothesis violation: " << e.what() << "\n";
        return exit_hypothesis;
    } catch (const BlowupError& e) {
        std::cerr << "frontlab: " << e.what() << "\n";
        return exit_blowup;
    } catch (const SingularMatrixError& e) {
        std::cerr << "frontlab: singular linear system: " << e.what() << "\n";
        return exit_nonconvergence;
    } catch (const Error& e) {
        std::cerr << "frontlab: " << e.what() << "\n";
        return exit_nonconvergence;
    }
}

}  // namespace frontlab
