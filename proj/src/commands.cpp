#include "phlab/commands.hpp"

#include <cmath>
#include <json.hpp>

#include "phlab/da_verify.hpp"
#include "phlab/homology.hpp"
#include "phlab/report.hpp"

namespace phlab {

using nlohmann::json;

namespace {

FoliationModel make_foliation(const Config&) { return FoliationModel{}; }

TwistProfile make_twist(const Config& cfg) {
    if (!cfg.rho.enabled) return TwistProfile::disabled();
    return TwistProfile(cfg.rho.flat_lo, cfg.rho.flat_hi);
}

DaMap make_da_map(const Config& cfg) {
    LinearModel model(cfg.linear_model);
    const std::vector<TorusPoint> fixed = fixed_points(model);
    if (fixed.size() != 2) {
        throw ConfigError("linearModel: expected exactly two fixed points");
    }
    DaParams params;
    params.sources = {fixed[0], fixed[1]};
    params.bump_radius = cfg.da.bump_radius;
    params.bump_strength = cfg.da.bump_strength;
    return DaMap(model, params);
}

IntegratorOptions make_integrator(const Config& cfg) {
    IntegratorOptions opts;
    opts.abs_tol = cfg.integrator.abs_tol;
    opts.max_steps = cfg.integrator.max_steps;
    return opts;
}

int run_foliations(const Config& cfg, Reporter& reporter) {
    const FoliationModel foliation = make_foliation(cfg);
    write_foliation_svg(reporter, "foliations.svg", foliation,
                        cfg.grids.foliation_leaves, cfg.grids.leaf_samples);
    return 0;
}

int run_certificate(const Config& cfg, Reporter& reporter) {
    const FoliationModel foliation = make_foliation(cfg);
    const TwistProfile twist = make_twist(cfg);
    const FindN0Result found =
        find_n0(foliation, twist, cfg.thresholds.margin, cfg.c_max, cfg.grids.cert_t,
                cfg.grids.cert_x);
    const MarginReport at_2n0 =
        check_transversality(foliation, twist, 2.0 * found.n0, cfg.grids.cert_t,
                             cfg.grids.cert_x, cfg.c_max, cfg.thresholds.margin);
    write_certificate_json(reporter, "certificate.json", found, at_2n0);
    return (found.report_at_n0.pass && at_2n0.pass) ? 0 : 2;
}

int run_sweep(const Config& cfg, const std::vector<double>& n_list,
              Reporter& reporter) {
    if (n_list.empty()) {
        throw std::invalid_argument("sweep: empty N list");
    }
    const FoliationModel foliation = make_foliation(cfg);
    const TwistProfile twist = make_twist(cfg);
    std::vector<MarginReport> rows;
    rows.reserve(n_list.size());
    for (double n : n_list) {
        rows.push_back(check_transversality(foliation, twist, n, cfg.grids.cert_t,
                                            cfg.grids.cert_x, cfg.c_max,
                                            cfg.thresholds.margin));
    }
    write_sweep_csv(reporter, "sweep.csv", rows);
    return 0;
}

double circle_distance(double x, double target) {
    return std::fabs(wrap_signed(x - target));
}

double compact_leaf_distance(double x) {
    double d = 1.0;
    for (double c : {0.0, 0.25, 0.5, 0.75}) d = std::min(d, circle_distance(x, c));
    return d;
}

int run_center(const Config& cfg, Reporter& reporter) {
    const FoliationModel foliation = make_foliation(cfg);
    const TwistProfile twist = make_twist(cfg);
    const IntegratorOptions opts = make_integrator(cfg);

    const DisplacementField field =
        displacement_field(foliation, twist, cfg.grids.displacement, opts);
    write_displacement_csv(reporter, "displacement.csv", field);
    write_displacement_svg(reporter, "displacement.svg", field);

    const double band = cfg.thresholds.compact_band;
    double s_circle_max_err = 0.0;   // |D - (0,1)| on x0 in {0, 1/2}
    double u_circle_max_err = 0.0;   // |D| on x0 in {1/4, 3/4}
    double max_abs_disp = 0.0;
    double off_band_min = std::numeric_limits<double>::infinity();
    double off_band_argmin_x = 0.0, off_band_argmin_y = 0.0;
    for (const DisplacementNode& node : field.nodes) {
        if (!node.ok) continue;
        max_abs_disp = std::max(max_abs_disp, std::hypot(node.dx, node.dy));
        if (node.x0 == 0.0 || node.x0 == 0.5) {
            s_circle_max_err = std::max(
                s_circle_max_err, std::hypot(node.dx, node.dy - 1.0));
        }
        if (node.x0 == 0.25 || node.x0 == 0.75) {
            u_circle_max_err =
                std::max(u_circle_max_err, std::hypot(node.dx, node.dy));
        }
        if (compact_leaf_distance(node.x0) > band &&
            node.dist_to_lattice < off_band_min) {
            off_band_min = node.dist_to_lattice;
            off_band_argmin_x = node.x0;
            off_band_argmin_y = node.y0;
        }
    }

    const double k = center_cocycle_bound(twist, cfg.orbits.cocycle_samples,
                                          cfg.orbits.cocycle_n_range, cfg.seed);
    const double k_limit =
        std::sqrt(1.0 + twist.max_rho_prime() * twist.max_rho_prime()) * 1.01;

    const std::vector<std::pair<double, double>> candidates = fixed_leaf_candidates(
        foliation, twist, 1, cfg.thresholds.candidate_tol, cfg.grids.candidate_x, opts);
    bool candidates_in_bands = true;
    for (const auto& [cx, cy] : candidates) {
        if (compact_leaf_distance(cx) > band) candidates_in_bands = false;
    }

    bool pass = field.failed == 0 && k <= k_limit;
    if (twist.enabled()) {
        pass = pass && s_circle_max_err < 1e-8 && u_circle_max_err < 1e-8 &&
               off_band_min > 0.0 && candidates_in_bands;
    } else {
        pass = pass && max_abs_disp < 1e-12 && k == 1.0;
    }

    json j;
    j["schemaVersion"] = 1;
    j["twistEnabled"] = twist.enabled();
    j["gridRes"] = field.grid_res;
    j["failedNodes"] = field.failed;
    j["maxArcLength"] = field.max_arc_length;
    j["sCircleMaxError"] = s_circle_max_err;
    j["uCircleMaxError"] = u_circle_max_err;
    j["maxAbsDisplacement"] = max_abs_disp;
    j["compactBand"] = band;
    j["offBandMinDistToLattice"] = std::isfinite(off_band_min) ? off_band_min : -1.0;
    j["offBandArgmin"] = {{"x0", off_band_argmin_x}, {"y0", off_band_argmin_y}};
    j["cocycleBound"] = k;
    j["cocycleBoundLimit"] = k_limit;
    j["fixedLeafCandidatesK1"] = candidates.size();
    j["candidatesInsideBands"] = candidates_in_bands;
    j["pass"] = pass;
    reporter.write_text("center.json", j.dump(2) + "\n");
    return pass ? 0 : 2;
}

int run_homology(const Config&, std::int64_t k, Reporter& reporter) {
    const TwistMatrix action = twist_action(k);
    json j;
    j["schemaVersion"] = 1;
    j["k"] = k;
    j["matrix"] = {{action.m[0][0], action.m[0][1]}, {action.m[1][0], action.m[1][1]}};
    j["obstructed"] = is_isotopy_obstructed(k);
    j["gamma1CrossingsT1"] = crossing_number(gamma1_representative(), SeparatingTorus::T1);
    j["gamma2CrossingsT1"] = crossing_number(gamma2_representative(), SeparatingTorus::T1);
    reporter.write_text("homology.json", j.dump(2) + "\n");
    return 0;
}

int run_da_verify(const Config& cfg, Reporter& reporter) {
    const DaMap map = make_da_map(cfg);
    const DaVerifyReport rep = run_da_verification(map, cfg);
    json j;
    j["schemaVersion"] = 1;
    j["fixedPointCount"] = rep.fixed_point_count;
    j["fixedPointExpected"] = rep.fixed_point_expected;
    j["fixedPointMaxMove"] = rep.fixed_point_max_move;
    j["sourceEigMinModulus"] = rep.source_eig_min_modulus;
    j["sourceSingularMin"] = rep.source_singular_min;
    j["derivativeFdMaxErr"] = rep.derivative_fd_max_err;
    j["derivativeDetMin"] = rep.derivative_det_min;
    j["inverseRoundtripMax"] = rep.inverse_roundtrip_max;
    j["stableSamples"] = rep.stable_samples;
    j["stableDirMaxErr"] = rep.stable_dir_max_err;
    j["ftleSamples"] = rep.ftle_samples;
    j["ftleCleanSamples"] = rep.ftle_clean_samples;
    j["ftleBottomMax"] = rep.ftle_bottom_max;
    j["ftleMiddleAbsMax"] = rep.ftle_middle_abs_max;
    j["ftleTopMin"] = rep.ftle_top_min;
    j["ftleTopCleanErr"] = rep.ftle_top_clean_err;
    j["trappingOk"] = rep.trapping_ok;
    j["trappingMargin"] = rep.trapping_margin;
    j["pass"] = rep.pass;
    reporter.write_text("da_verify.json", j.dump(2) + "\n");
    return rep.pass ? 0 : 2;
}

}  // namespace

std::vector<double> default_sweep_list() {
    std::vector<double> out;
    for (double n = 16.0; n <= 4096.0; n *= 2.0) out.push_back(n);
    return out;
}

int cmd_foliations(const Config& cfg) {
    Reporter reporter(cfg, "foliations");
    const int rc = run_foliations(cfg, reporter);
    reporter.finish();
    return rc;
}

int cmd_certificate(const Config& cfg) {
    Reporter reporter(cfg, "certificate");
    const int rc = run_certificate(cfg, reporter);
    reporter.finish();
    return rc;
}

int cmd_sweep(const Config& cfg, const std::vector<double>& n_list) {
    Reporter reporter(cfg, "sweep");
    const int rc = run_sweep(cfg, n_list, reporter);
    reporter.finish();
    return rc;
}

int cmd_center(const Config& cfg) {
    Reporter reporter(cfg, "center");
    const int rc = run_center(cfg, reporter);
    reporter.finish();
    return rc;
}

int cmd_homology(const Config& cfg, std::int64_t k) {
    Reporter reporter(cfg, "homology");
    const int rc = run_homology(cfg, k, reporter);
    reporter.finish();
    return rc;
}

int cmd_da_verify(const Config& cfg) {
    Reporter reporter(cfg, "da-verify");
    const int rc = run_da_verify(cfg, reporter);
    reporter.finish();
    return rc;
}

int cmd_all(const Config& cfg) {
    Reporter reporter(cfg, "all");
    int rc = 0;
    rc = std::max(rc, run_foliations(cfg, reporter));
    rc = std::max(rc, run_da_verify(cfg, reporter));
    rc = std::max(rc, run_certificate(cfg, reporter));
    rc = std::max(rc, run_sweep(cfg, default_sweep_list(), reporter));
    rc = std::max(rc, run_center(cfg, reporter));
    rc = std::max(rc, run_homology(cfg, 1, reporter));
    reporter.finish();
    return rc;
}

}  // namespace phlab
