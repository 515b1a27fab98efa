#pragma once

#include "phlab/config.hpp"
#include "phlab/suspension.hpp"

namespace phlab {

/// Numeric verification of the modified-map structure: fixed points, source
/// repulsion, derivative consistency, invertibility, stable-direction
/// convergence, suspension exponents and the trapping region.
struct DaVerifyReport {
    int fixed_point_count = 0;
    int fixed_point_expected = 0;
    double fixed_point_max_move = 0.0;  // |phi(p) - p| over the claimed points

    double source_eig_min_modulus = 0.0;
    double source_singular_min = 0.0;

    double derivative_fd_max_err = 0.0;  // vs central differences, 64x64 grid
    double derivative_det_min = 0.0;     // orientation / diffeomorphism check
    double inverse_roundtrip_max = 0.0;  // |phi(phi^{-1}(p)) - p|, 64x64 grid

    int stable_samples = 0;         // orbits avoiding the bumps for 60 steps
    double stable_dir_max_err = 0.0;  // vs the linear stable eigendirection

    int ftle_samples = 0;
    int ftle_clean_samples = 0;      // orbits avoiding the bumps entirely
    double ftle_bottom_max = 0.0;    // max of lambda_ss over samples
    double ftle_middle_abs_max = 0.0;
    double ftle_top_min = 0.0;       // min of lambda_uu over samples
    double ftle_top_clean_err = 0.0;  // |lambda_uu - ln(lambda_u)| on clean orbits

    // Forward invariance of the complement of eigenbasis-aligned boxes around
    // the sources (the round bump disks are not adapted: the map is linear on
    // their boundary and contracts through it along the stable direction).
    bool trapping_ok = false;
    double trapping_margin = 0.0;

    bool pass = false;
};

DaVerifyReport run_da_verification(const DaMap& map, const Config& cfg);

// The adapted trapping box half-widths in the dual eigenbasis frame,
// proportional to the bump radius.
double trapping_box_stable_halfwidth(const DaMap& map);
double trapping_box_unstable_halfwidth(const DaMap& map);

}  // namespace phlab
