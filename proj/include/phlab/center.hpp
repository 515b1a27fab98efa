#pragma once

#include <optional>
#include <vector>

#include "phlab/certificate.hpp"

namespace phlab {

// Unit direction of E^c = E_A^{cs} cap G_* E_R^{cu} at model coordinates
// (t, x), oriented with positive t-component. In angle form
//     e_t + [rho'(t) cos(theta_u) / sin(theta_s - theta_u)] * v_s(x),
// which is regular across the compact leaves (the slope form is not).
// Throws std::runtime_error if the planes are tangent (profile bug).
Eigen::Vector3d center_direction(const FoliationModel& foliation,
                                 const TwistProfile& twist, double t, double x);

struct IntegratorOptions {
    double abs_tol = 1e-10;
    long max_steps = 1000000;
    bool record_samples = false;
};

/// A center arc crossing the fundamental domain, parametrized by t in [0,1].
struct CenterArc {
    double x0 = 0.0, y0 = 0.0;  // entry on {t = 0}
    double x1 = 0.0, y1 = 0.0;  // exit on {t = 1}, wrapped
    double dx = 0.0, dy = 0.0;  // unwrapped displacement (x1 - x0, y1 - y0)
    double arc_length = 0.0;
    long accepted_steps = 0;
    // Largest |<unit tangent, plane normal>| seen over both defining planes.
    double max_tangency_residual = 0.0;
    std::vector<ModelPoint> samples;  // filled when record_samples is set
};

// Integrates the center line field from (0, x0, y0) to t = 1 with an adaptive
// fourth-order scheme (step doubling). Throws std::runtime_error with the
// location if the step size underflows or the step budget is exhausted.
CenterArc integrate_arc(const FoliationModel& foliation, const TwistProfile& twist,
                        double x0, double y0, const IntegratorOptions& opts = {});

struct DisplacementNode {
    double x0 = 0.0, y0 = 0.0;
    double dx = 0.0, dy = 0.0;
    double dist_to_lattice = 0.0;
    double arc_length = 0.0;
    bool ok = false;
};

struct DisplacementField {
    int grid_res = 0;
    std::vector<DisplacementNode> nodes;  // row-major over (x0, y0)
    int failed = 0;
    double max_arc_length = 0.0;

    const DisplacementNode& at(int i, int j) const {
        return nodes[static_cast<std::size_t>(i) * static_cast<std::size_t>(grid_res) +
                     static_cast<std::size_t>(j)];
    }
};

DisplacementField displacement_field(const FoliationModel& foliation,
                                     const TwistProfile& twist, int grid_res,
                                     const IntegratorOptions& opts = {});

// Model-level bound for the center cocycle: the flow acts as the identity on
// model coordinates, one shear per crossing of the twist support. Transports
// the unit center vector e_t of the untwisted region along sampled orbits and
// returns max(|v_n|, 1/|v_n|) over samples and n in [-n_range, n_range].
double center_cocycle_bound(const TwistProfile& twist, int orbit_samples,
                            int n_range, std::uint64_t seed);

// Entry points whose k-fold displacement lies within tol of the integer
// lattice. Displacements are y-independent, so entries are sampled on an
// x-grid at y0 = 0; k < 0 gives the same set as |k|.
std::vector<std::pair<double, double>> fixed_leaf_candidates(
    const FoliationModel& foliation, const TwistProfile& twist, int k, double tol,
    int x_res, const IntegratorOptions& opts = {});

}  // namespace phlab
