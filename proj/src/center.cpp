#include "phlab/center.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace phlab {

namespace {

// Coefficient b(t, x) with center direction e_t + b * v_s(x). Both cos(theta_u)
// and sin(theta_s - theta_u) flip sign together under the mod-pi ambiguity, so
// b is well defined.
double center_coefficient(const FoliationModel& foliation, const TwistProfile& twist,
                          double t, double x) {
    const double ts = foliation.s_direction(x);
    const double tu = foliation.u_direction(x);
    const double denom = std::sin(ts - tu);
    if (std::fabs(denom) < 1e-12) {
        std::ostringstream msg;
        msg << "center_direction: cs and G*cu planes tangent at x = " << x;
        throw std::runtime_error(msg.str());
    }
    return twist.rho_prime(t) * std::cos(tu) / denom;
}

}  // namespace

Eigen::Vector3d center_direction(const FoliationModel& foliation,
                                 const TwistProfile& twist, double t, double x) {
    const double b = center_coefficient(foliation, twist, t, x);
    const double ts = foliation.s_direction(x);
    Eigen::Vector3d dir(1.0, b * std::cos(ts), b * std::sin(ts));
    return dir / dir.norm();
}

CenterArc integrate_arc(const FoliationModel& foliation, const TwistProfile& twist,
                        double x0, double y0, const IntegratorOptions& opts) {
    // State (x, dy, L) driven by dx/dt = b cos(theta_s), dy/dt = b sin(theta_s),
    // dL/dt = sqrt(1 + b^2); exactly zero on the flat regions of rho. y is
    // carried as the offset from y0 so the integration is bit-identical for
    // every entry height (nothing on the right side depends on y).
    struct State {
        double x, y, len;
    };
    auto rhs = [&](double t, const State& st) {
        const double b = center_coefficient(foliation, twist, t, st.x);
        const double ts = foliation.s_direction(st.x);
        return State{b * std::cos(ts), b * std::sin(ts), std::sqrt(1.0 + b * b)};
    };
    auto rk4 = [&](double t, const State& st, double h) {
        const State k1 = rhs(t, st);
        const State s2{st.x + 0.5 * h * k1.x, st.y + 0.5 * h * k1.y,
                       st.len + 0.5 * h * k1.len};
        const State k2 = rhs(t + 0.5 * h, s2);
        const State s3{st.x + 0.5 * h * k2.x, st.y + 0.5 * h * k2.y,
                       st.len + 0.5 * h * k2.len};
        const State k3 = rhs(t + 0.5 * h, s3);
        const State s4{st.x + h * k3.x, st.y + h * k3.y, st.len + h * k3.len};
        const State k4 = rhs(t + h, s4);
        return State{st.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
                     st.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
                     st.len + h / 6.0 * (k1.len + 2.0 * k2.len + 2.0 * k3.len + k4.len)};
    };

    CenterArc arc;
    arc.x0 = x0;
    arc.y0 = y0;

    State st{x0, 0.0, 0.0};
    double t = 0.0;
    double h = 0.01;
    if (opts.record_samples) {
        arc.samples.push_back({0.0, wrap_unit(x0), wrap_unit(y0)});
    }

    auto residual_at = [&](double tt, const State& s) {
        // Tangent against the normals of both defining planes.
        const double b = center_coefficient(foliation, twist, tt, s.x);
        const double ts = foliation.s_direction(s.x);
        Eigen::Vector3d tangent(1.0, b * std::cos(ts), b * std::sin(ts));
        tangent.normalize();
        const Eigen::Vector3d n1 = cs_plane(foliation, s.x).normal;
        const Eigen::Vector3d tu = Eigen::Vector3d(
            0.0, std::cos(foliation.u_direction(s.x)), std::sin(foliation.u_direction(s.x)));
        const Eigen::Vector3d n2 =
            Eigen::Vector3d(1.0, 0.0, twist.rho_prime(tt)).cross(tu).normalized();
        return std::max(std::fabs(tangent.dot(n1)), std::fabs(tangent.dot(n2)));
    };

    long steps = 0;
    while (t < 1.0) {
        if (++steps > opts.max_steps) {
            std::ostringstream msg;
            msg << "integrate_arc: step budget exhausted at t = " << t
                << ", entry (" << x0 << ", " << y0 << ")";
            throw std::runtime_error(msg.str());
        }
        if (h < 1e-14) {
            std::ostringstream msg;
            msg << "integrate_arc: step underflow at t = " << t << ", entry (" << x0
                << ", " << y0 << ")";
            throw std::runtime_error(msg.str());
        }
        if (t + h > 1.0) h = 1.0 - t;

        const State full = rk4(t, st, h);
        const State half = rk4(t, st, 0.5 * h);
        const State two = rk4(t + 0.5 * h, half, 0.5 * h);
        const double err = std::max({std::fabs(two.x - full.x), std::fabs(two.y - full.y),
                                     std::fabs(two.len - full.len)}) /
                           15.0;
        if (err <= opts.abs_tol) {
            st = two;
            t += h;
            ++arc.accepted_steps;
            arc.max_tangency_residual =
                std::max(arc.max_tangency_residual, residual_at(std::min(t, 1.0), st));
            if (opts.record_samples) {
                arc.samples.push_back({t, wrap_unit(st.x), wrap_unit(y0 + st.y)});
            }
            if (err == 0.0) {
                h = std::min(h * 4.0, 0.25);
            } else {
                h = std::min(0.9 * h * std::pow(opts.abs_tol / err, 0.2), 0.25);
            }
        } else {
            h *= std::max(0.1, 0.9 * std::pow(opts.abs_tol / err, 0.2));
        }
    }

    arc.dx = st.x - x0;
    arc.dy = st.y;
    arc.x1 = wrap_unit(st.x);
    arc.y1 = wrap_unit(y0 + st.y);
    arc.arc_length = st.len;
    return arc;
}

DisplacementField displacement_field(const FoliationModel& foliation,
                                     const TwistProfile& twist, int grid_res,
                                     const IntegratorOptions& opts) {
    if (grid_res < 2) {
        throw std::invalid_argument("displacement_field: grid_res must be >= 2");
    }
    DisplacementField field;
    field.grid_res = grid_res;
    field.nodes.resize(static_cast<std::size_t>(grid_res) *
                       static_cast<std::size_t>(grid_res));
    for (int i = 0; i < grid_res; ++i) {
        const double x0 = static_cast<double>(i) / grid_res;
        for (int j = 0; j < grid_res; ++j) {
            const double y0 = static_cast<double>(j) / grid_res;
            DisplacementNode& node =
                field.nodes[static_cast<std::size_t>(i) * grid_res +
                            static_cast<std::size_t>(j)];
            node.x0 = x0;
            node.y0 = y0;
            try {
                const CenterArc arc = integrate_arc(foliation, twist, x0, y0, opts);
                node.dx = arc.dx;
                node.dy = arc.dy;
                node.dist_to_lattice =
                    std::hypot(wrap_signed(arc.dx), wrap_signed(arc.dy));
                node.arc_length = arc.arc_length;
                node.ok = true;
                field.max_arc_length = std::max(field.max_arc_length, arc.arc_length);
            } catch (const std::runtime_error&) {
                node.ok = false;
                ++field.failed;
            }
        }
    }
    return field;
}

double center_cocycle_bound(const TwistProfile& twist, int orbit_samples,
                            int n_range, std::uint64_t seed) {
    if (orbit_samples < 1 || n_range < 1) {
        throw std::invalid_argument("center_cocycle_bound: need samples and range >= 1");
    }
    SplitMix64 rng(seed);
    double k = 1.0;
    for (int i = 0; i < orbit_samples; ++i) {
        const double t0 = rng.next_double();
        // The orbit sits at fractional position t0 in every domain; the single
        // nontrivial cocycle factor is the shear with rho'(t0).
        const Eigen::Matrix3d shear = g_derivative(twist, {t0, 0.0, 0.0});
        Eigen::Vector3d v = Eigen::Vector3d::UnitX();  // unit center upstream
        for (int n = 1; n <= n_range; ++n) {
            if (n == 1) v = shear * v;
            const double norm = v.norm();
            k = std::max({k, norm, 1.0 / norm});
        }
    }
    return k;
}

std::vector<std::pair<double, double>> fixed_leaf_candidates(
    const FoliationModel& foliation, const TwistProfile& twist, int k, double tol,
    int x_res, const IntegratorOptions& opts) {
    if (k == 0) {
        throw std::invalid_argument("fixed_leaf_candidates: k must be nonzero");
    }
    if (x_res < 2) {
        throw std::invalid_argument("fixed_leaf_candidates: x_res must be >= 2");
    }
    const int folds = std::abs(k);
    std::vector<std::pair<double, double>> candidates;
    for (int i = 0; i < x_res; ++i) {
        const double x0 = static_cast<double>(i) / x_res;
        double x = x0, y = 0.0;
        double total_dx = 0.0, total_dy = 0.0;
        bool ok = true;
        for (int fold = 0; fold < folds; ++fold) {
            try {
                const CenterArc arc =
                    integrate_arc(foliation, twist, wrap_unit(x), wrap_unit(y), opts);
                total_dx += arc.dx;
                total_dy += arc.dy;
                x += arc.dx;
                y += arc.dy;
            } catch (const std::runtime_error&) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        const double dist = std::hypot(wrap_signed(total_dx), wrap_signed(total_dy));
        if (dist < tol) {
            candidates.emplace_back(x0, 0.0);
        }
    }
    return candidates;
}

}  // namespace phlab
