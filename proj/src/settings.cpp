#include "sslab/settings.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "sslab/errors.hpp"

namespace sslab {

const Settings& Settings::defaults() {
    static const Settings s;
    return s;
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

Settings load_settings(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IOError("cannot read config file " + path);
    Settings s;
    std::map<std::string, std::function<void(const std::string&)>> set;
    auto real = [&](const char* k, double& v) { set[k] = [&v](const std::string& x) { v = std::stod(x); }; };
    auto integer = [&](const char* k, int& v) { set[k] = [&v](const std::string& x) { v = std::stoi(x); }; };
    real("quad_rel_tol", s.quad_rel_tol);
    real("quad_abs_tol", s.quad_abs_tol);
    real("clearance", s.clearance);
    integer("period_nodes", s.period_nodes);
    real("period_radius_cap", s.period_radius_cap);
    real("period_tol", s.period_tol);
    integer("winding_nodes", s.winding_nodes);
    integer("winding_max_nodes", s.winding_max_nodes);
    integer("contour_nodes", s.contour_nodes);
    integer("contour_levels", s.contour_levels);
    real("contour_r0", s.contour_r0);
    real("contour_R0", s.contour_R0);
    real("contour_agree", s.contour_agree);
    real("area_margin0", s.area_margin0);
    integer("area_levels", s.area_levels);
    integer("area_theta_nodes", s.area_theta_nodes);
    integer("area_panels_per_unit", s.area_panels_per_unit);
    integer("area_gauss_order", s.area_gauss_order);
    integer("locus_grid", s.locus_grid);
    real("locus_dedup", s.locus_dedup);
    real("locus_residual", s.locus_residual);
    real("locus_rmin", s.locus_rmin);
    real("locus_rmax", s.locus_rmax);
    real("locus_disc", s.locus_disc);
    integer("mesh_res", s.mesh_res);
    real("mesh_rmin", s.mesh_rmin);
    real("mesh_rmax", s.mesh_rmax);
    real("mesh_half_width", s.mesh_half_width);
    real("ledger_tol", s.ledger_tol);
    real("kperp_tol", s.kperp_tol);
    real("completeness_r0", s.completeness_r0);
    integer("completeness_levels", s.completeness_levels);

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        auto it = set.find(key);
        if (it == set.end()) throw ParseError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        try {
            it->second(val);
        } catch (const std::logic_error&) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
        }
    }
    return s;
}

Settings settings_from_environment(const std::string& fallback) {
    if (const char* env = std::getenv("SSLAB_CONFIG"); env && *env) return load_settings(env);
    if (!fallback.empty()) return load_settings(fallback);
    return Settings{};
}

}  // namespace sslab
