#pragma once

#include <map>
#include <string>
#include <vector>

#include "frontlab/front_solver.hpp"
#include "frontlab/pde_sim.hpp"
#include "frontlab/profile.hpp"
#include "frontlab/sensitivity.hpp"

namespace frontlab {

/// Shortest round-trip decimal formatting (std::to_chars); '.' decimal
/// separator, used for all CSV payloads so reruns are byte-identical.
std::string format_double(double v);

/// Profile CSV: header comment lines (one per metadata entry, then the
/// resolved config), then `x,u1,u2,v_T,v_L` rows (LF line ends). For
/// one-component profiles u2 = 0 and the transform columns follow
/// mechanically.
void write_profile_csv(const std::string& path, const Profile& p,
                       const std::vector<std::pair<std::string, std::string>>& metadata,
                       const std::string& config_echo);

/// Flat key=value report block with a config-echo comment header.
void write_report_kv(const std::string& path,
                     const std::vector<std::pair<std::string, std::string>>& kv,
                     const std::string& config_echo);

void write_track_csv(const std::string& path, const FrontTrack& track,
                     const std::string& config_echo);

struct SweepRow {
    double mu_or_eps = 0.0;
    double cbar_solvency = 0.0;
    double cbar_alt = 0.0;
    double cbar_half_s = 0.0;
    double cbar_half_rot = 0.0;
    double orth_defect = 0.0;
    double sym_defect_psi = 0.0;
    double sym_defect_phibar = 0.0;
};
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows,
                     const std::string& config_echo);

void write_validate_csv(const std::string& path, const std::vector<ValidationRow>& rows,
                        const std::string& config_echo);

}  // namespace frontlab
