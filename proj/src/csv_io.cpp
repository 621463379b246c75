#include "frontlab/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "frontlab/errors.hpp"

namespace frontlab {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: LF line ends everywhere
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    return out;
}

void write_config_echo(std::ofstream& out, const std::string& config_echo) {
    std::istringstream iss(config_echo);
    std::string line;
    out << "# resolved config:\n";
    while (std::getline(iss, line)) out << "# " << line << "\n";
}

}  // namespace

void write_profile_csv(const std::string& path, const Profile& p,
                       const std::vector<std::pair<std::string, std::string>>& metadata,
                       const std::string& config_echo) {
    auto out = open_out(path);
    for (const auto& [k, v] : metadata) out << "# " << k << " = " << v << "\n";
    write_config_echo(out, config_echo);
    out << "x,u1,u2,v_T,v_L\n";
    for (int i = 0; i < p.grid.N; ++i) {
        const double u1 = p.at(i, 0);
        const double u2 = p.dim > 1 ? p.at(i, 1) : 0.0;
        out << format_double(p.grid.x(i)) << ',' << format_double(u1) << ',' << format_double(u2)
            << ',' << format_double(u1 + u2) << ',' << format_double(-u1 + u2) << "\n";
    }
}

void write_report_kv(const std::string& path,
                     const std::vector<std::pair<std::string, std::string>>& kv,
                     const std::string& config_echo) {
    auto out = open_out(path);
    write_config_echo(out, config_echo);
    for (const auto& [k, v] : kv) out << k << "=" << v << "\n";
}

void write_track_csv(const std::string& path, const FrontTrack& track,
                     const std::string& config_echo) {
    auto out = open_out(path);
    out << "# speed = " << format_double(track.speed) << "\n";
    out << "# fit_rms = " << format_double(track.fit_rms) << "\n";
    out << "# resolution = " << format_double(track.resolution) << "\n";
    write_config_echo(out, config_echo);
    out << "t,x_star\n";
    for (std::size_t i = 0; i < track.times.size(); ++i)
        out << format_double(track.times[i]) << ',' << format_double(track.positions[i]) << "\n";
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows,
                     const std::string& config_echo) {
    auto out = open_out(path);
    write_config_echo(out, config_echo);
    out << "mu_or_eps,cbar_solvency,cbar_alt,cbar_half_s,cbar_half_rot,orth_defect,"
           "sym_defect_psi,sym_defect_phibar,sign_cbar\n";
    for (const auto& r : rows) {
        // dead band: quadrature-level noise around an exact zero counts as 0
        const int sign =
            r.cbar_solvency > 1e-10 ? 1 : (r.cbar_solvency < -1e-10 ? -1 : 0);
        out << format_double(r.mu_or_eps) << ',' << format_double(r.cbar_solvency) << ','
            << format_double(r.cbar_alt) << ',' << format_double(r.cbar_half_s) << ','
            << format_double(r.cbar_half_rot) << ',' << format_double(r.orth_defect) << ','
            << format_double(r.sym_defect_psi) << ',' << format_double(r.sym_defect_phibar) << ','
            << sign << "\n";
    }
}

void write_validate_csv(const std::string& path, const std::vector<ValidationRow>& rows,
                        const std::string& config_echo) {
    auto out = open_out(path);
    write_config_echo(out, config_echo);
    out << "eps,c_measured,c_predicted,rel_error,resolution,advancing\n";
    for (const auto& r : rows)
        out << format_double(r.eps) << ',' << format_double(r.measured) << ','
            << format_double(r.predicted) << ',' << format_double(r.rel_error) << ','
            << format_double(r.resolution) << ',' << r.advancing << "\n";
}

}  // namespace frontlab
