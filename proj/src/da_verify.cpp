#include "phlab/da_verify.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace phlab {

namespace {

bool outside_bumps(const DaMap& map, const TorusPoint& p, double slack = 0.0) {
    for (const TorusPoint& s : map.params().sources) {
        if (torus_distance(s, p) <= map.params().bump_radius + slack) return false;
    }
    return true;
}

bool orbit_avoids_bumps(const DaMap& map, TorusPoint p, int steps) {
    for (int i = 0; i < steps; ++i) {
        if (!outside_bumps(map, p)) return false;
        p = map.apply(p);
    }
    return true;
}

}  // namespace

double trapping_box_stable_halfwidth(const DaMap& map) {
    return 0.15 * map.params().bump_radius;
}

double trapping_box_unstable_halfwidth(const DaMap& map) {
    return 0.08 * map.params().bump_radius;
}

DaVerifyReport run_da_verification(const DaMap& map, const Config& cfg) {
    DaVerifyReport rep;
    const LinearModel& model = map.model();

    // Fixed points of the underlying automorphism stay fixed for the map.
    const std::vector<TorusPoint> fixed = fixed_points(model);
    rep.fixed_point_count = static_cast<int>(fixed.size());
    rep.fixed_point_expected =
        static_cast<int>(std::llabs(model.det_minus_identity()));
    for (const TorusPoint& p : fixed) {
        rep.fixed_point_max_move =
            std::max(rep.fixed_point_max_move, torus_distance(map.apply(p), p));
    }

    // Source repulsion: eigenvalues and singular values of the derivative.
    rep.source_eig_min_modulus = std::numeric_limits<double>::infinity();
    rep.source_singular_min = std::numeric_limits<double>::infinity();
    for (const TorusPoint& s : map.params().sources) {
        const Eigen::Matrix2d d = map.derivative(s);
        const Eigen::EigenSolver<Eigen::Matrix2d> eig(d);
        for (int i = 0; i < 2; ++i) {
            rep.source_eig_min_modulus =
                std::min(rep.source_eig_min_modulus, std::abs(eig.eigenvalues()(i)));
        }
        const Eigen::JacobiSVD<Eigen::Matrix2d> svd(d);
        rep.source_singular_min =
            std::min(rep.source_singular_min, svd.singularValues()(1));
    }

    // Derivative vs central differences and the roundtrip inverse, 64x64 grid.
    const int grid = 64;
    const double h = 1e-5;
    rep.derivative_det_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            const TorusPoint p{static_cast<double>(i) / grid,
                               static_cast<double>(j) / grid};
            const Eigen::Matrix2d d = map.derivative(p);
            rep.derivative_det_min = std::min(rep.derivative_det_min, d.determinant());

            Eigen::Matrix2d fd;
            for (int axis = 0; axis < 2; ++axis) {
                TorusPoint plus = p, minus = p;
                (axis == 0 ? plus.x : plus.y) += h;
                (axis == 0 ? minus.x : minus.y) -= h;
                plus = TorusPoint::wrapped(plus.x, plus.y);
                minus = TorusPoint::wrapped(minus.x, minus.y);
                const Eigen::Vector2d diff =
                    torus_displacement(map.apply(minus), map.apply(plus)) / (2.0 * h);
                fd(0, axis) = diff.x();
                fd(1, axis) = diff.y();
            }
            rep.derivative_fd_max_err =
                std::max(rep.derivative_fd_max_err,
                         (d - fd).cwiseAbs().maxCoeff());

            const TorusPoint back = map.apply(map.apply_inverse(p));
            rep.inverse_roundtrip_max =
                std::max(rep.inverse_roundtrip_max, torus_distance(back, p));
        }
    }

    // Stable-direction convergence on bump-avoiding orbits.
    const double stable_angle =
        wrap_line_angle(std::atan2(model.stable_direction().y(),
                                   model.stable_direction().x()));
    SplitMix64 rng(cfg.seed ^ 0x5461626c65ULL);
    const int wanted = cfg.orbits.stable_samples;
    long budget = 200000;
    while (rep.stable_samples < wanted && budget-- > 0) {
        const TorusPoint p{rng.next_double(), rng.next_double()};
        if (!orbit_avoids_bumps(map, p, cfg.orbits.stable_iterates)) continue;
        const double dir =
            finite_time_stable_direction(map, p, cfg.orbits.stable_iterates);
        rep.stable_dir_max_err = std::max(
            rep.stable_dir_max_err, line_angle_distance(dir, stable_angle));
        ++rep.stable_samples;
    }

    // Suspension exponents on attractor-basin samples.
    SplitMix64 rng2(cfg.seed ^ 0x46746c65ULL);
    rep.ftle_bottom_max = -std::numeric_limits<double>::infinity();
    rep.ftle_top_min = std::numeric_limits<double>::infinity();
    const double log_lambda_u = std::log(model.unstable_eigenvalue());
    const int ftle_steps = static_cast<int>(cfg.orbits.ftle_time);
    budget = 100000;
    int clean_wanted = std::max(10, cfg.orbits.ftle_samples / 5);
    while ((rep.ftle_samples < cfg.orbits.ftle_samples ||
            rep.ftle_clean_samples < clean_wanted) &&
           budget-- > 0) {
        TorusPoint p{rng2.next_double(), rng2.next_double()};
        for (int i = 0; i < 20; ++i) p = map.apply(p);  // settle toward the attractor
        if (!outside_bumps(map, p)) continue;
        const bool clean = orbit_avoids_bumps(map, p, ftle_steps);
        if (rep.ftle_samples >= cfg.orbits.ftle_samples && !clean) continue;
        const std::array<double, 3> exps = ftle(map, {p, 0.0}, cfg.orbits.ftle_time);
        if (rep.ftle_samples < cfg.orbits.ftle_samples) {
            ++rep.ftle_samples;
            rep.ftle_bottom_max = std::max(rep.ftle_bottom_max, exps[0]);
            rep.ftle_middle_abs_max =
                std::max(rep.ftle_middle_abs_max, std::fabs(exps[1]));
            rep.ftle_top_min = std::min(rep.ftle_top_min, exps[2]);
        }
        if (clean && rep.ftle_clean_samples < clean_wanted) {
            ++rep.ftle_clean_samples;
            rep.ftle_top_clean_err = std::max(rep.ftle_top_clean_err,
                                              std::fabs(exps[2] - log_lambda_u));
        }
    }

    // Trapping: the complement of eigenbasis-aligned boxes around the sources
    // maps into itself; sampled on the box boundaries, where it binds.
    const double ru = trapping_box_unstable_halfwidth(map);
    const double rs = trapping_box_stable_halfwidth(map);
    const Eigen::Vector2d& vu = model.unstable_direction();
    const Eigen::Vector2d& vs = model.stable_direction();
    const Eigen::Vector2d& ws = model.stable_covector();
    Eigen::Vector2d wu(-vs.y(), vs.x());
    wu /= wu.dot(vu);

    auto box_inf = [&](const TorusPoint& q) {
        // min over the sources of the scaled sup-norm of the dual coordinates;
        // >= 1 means outside every open box.
        double best = std::numeric_limits<double>::infinity();
        for (const TorusPoint& s : map.params().sources) {
            const Eigen::Vector2d d = torus_displacement(s, q);
            const double su = std::fabs(wu.dot(d)) / ru;
            const double ss = std::fabs(ws.dot(d)) / rs;
            best = std::min(best, std::max(su, ss));
        }
        return best;
    };

    rep.trapping_margin = std::numeric_limits<double>::infinity();
    const int face_samples = 512;
    for (const TorusPoint& s : map.params().sources) {
        for (int face = 0; face < 4; ++face) {
            for (int i = 0; i <= face_samples; ++i) {
                const double w = -1.0 + 2.0 * static_cast<double>(i) / face_samples;
                double u = 0.0, t = 0.0;
                switch (face) {
                    case 0: u = ru; t = w * rs; break;
                    case 1: u = -ru; t = w * rs; break;
                    case 2: u = w * ru; t = rs; break;
                    default: u = w * ru; t = -rs; break;
                }
                const Eigen::Vector2d offset = u * vu + t * vs;
                const TorusPoint p = TorusPoint::wrapped(s.x + offset.x(),
                                                         s.y + offset.y());
                rep.trapping_margin =
                    std::min(rep.trapping_margin, box_inf(map.apply(p)) - 1.0);
            }
        }
    }
    rep.trapping_ok = rep.trapping_margin > 0.0;

    rep.pass = rep.fixed_point_count == rep.fixed_point_expected &&
               rep.fixed_point_max_move < 1e-12 &&
               rep.source_eig_min_modulus > 1.0 && rep.source_singular_min > 1.0 &&
               rep.derivative_fd_max_err < 1e-6 && rep.derivative_det_min > 0.0 &&
               rep.inverse_roundtrip_max < 1e-9 &&
               rep.stable_samples == wanted && rep.stable_dir_max_err < 1e-6 &&
               rep.ftle_samples == cfg.orbits.ftle_samples &&
               rep.ftle_clean_samples >= clean_wanted &&
               rep.ftle_bottom_max < -0.1 && rep.ftle_middle_abs_max == 0.0 &&
               rep.ftle_top_min > 0.1 && rep.ftle_top_clean_err <= 0.05 &&
               rep.trapping_ok;
    return rep;
}

}  // namespace phlab
