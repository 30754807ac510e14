#pragma once

#include <string>

namespace sslab {

// Tolerances, schedules and node counts. Every analysis routine takes one of
// these by const reference; defaults reproduce the documented behaviour.
struct Settings {
    // immersion quadrature
    double quad_rel_tol = 1e-11;
    double quad_abs_tol = 1e-12;
    double clearance = 1e-6;

    // periods
    int period_nodes = 512;
    double period_radius_cap = 0.5;
    double period_tol = 1e-9;

    // windings
    int winding_nodes = 1024;
    int winding_max_nodes = 1 << 16;

    // boundary-integral total curvature
    int contour_nodes = 512;
    int contour_levels = 21;
    double contour_r0 = 0.5;
    double contour_R0 = 4.0;
    double contour_agree = 1e-6;

    // area total curvature
    double area_margin0 = 0.25;
    int area_levels = 7;
    int area_theta_nodes = 256;
    int area_panels_per_unit = 4;
    int area_gauss_order = 8;

    // singular locus
    int locus_grid = 256;
    double locus_dedup = 1e-8;
    double locus_residual = 1e-10;
    double locus_rmin = 1e-2;
    double locus_rmax = 1e2;
    double locus_disc = 10.0;

    // meshes
    int mesh_res = 128;
    double mesh_rmin = 1e-2;
    double mesh_rmax = 1e2;
    double mesh_half_width = 5.0;

    // ledger
    double ledger_tol = 1e-3;
    double kperp_tol = 5e-3;

    // completeness probe
    double completeness_r0 = 0.5;
    int completeness_levels = 40;

    static const Settings& defaults();
};

// Reads key=value lines ('#' starts a comment) over the defaults.
// Throws IOError for unreadable files and ParseError for unknown keys.
Settings load_settings(const std::string& path);

// SSLAB_CONFIG when set, otherwise fallback (may be empty for defaults).
Settings settings_from_environment(const std::string& fallback = "");

}  // namespace sslab
