#include "phlab/twist.hpp"

#include <cmath>
#include <stdexcept>

namespace phlab {

TwistProfile::TwistProfile(double flat_lo, double flat_hi)
    : flat_lo_(flat_lo), flat_hi_(flat_hi) {
    if (!(0.0 < flat_lo_ && flat_lo_ < flat_hi_ && flat_hi_ < 1.0)) {
        throw std::invalid_argument("TwistProfile: need 0 < flat_lo < flat_hi < 1");
    }
}

TwistProfile TwistProfile::disabled() {
    TwistProfile p;
    p.enabled_ = false;
    return p;
}

double TwistProfile::rho(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::domain_error("TwistProfile::rho: t must lie in [0, 1]");
    }
    if (!enabled_) return 0.0;
    return smoothstep5((t - flat_lo_) / (flat_hi_ - flat_lo_));
}

double TwistProfile::rho_prime(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::domain_error("TwistProfile::rho_prime: t must lie in [0, 1]");
    }
    if (!enabled_) return 0.0;
    return smoothstep5_deriv((t - flat_lo_) / (flat_hi_ - flat_lo_)) /
           (flat_hi_ - flat_lo_);
}

double TwistProfile::max_rho_prime() const {
    if (!enabled_) return 0.0;
    return (15.0 / 8.0) / (flat_hi_ - flat_lo_);
}

ModelPoint g_apply(const TwistProfile& profile, const ModelPoint& p) {
    return {p.t, p.x, wrap_unit(p.y + profile.rho(p.t))};
}

ModelPoint g_inverse(const TwistProfile& profile, const ModelPoint& p) {
    return {p.t, p.x, wrap_unit(p.y - profile.rho(p.t))};
}

Eigen::Matrix3d g_derivative(const TwistProfile& profile, const ModelPoint& p) {
    Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
    d(2, 0) = profile.rho_prime(p.t);
    return d;
}

ModelPoint h_n(double t_abs, const TorusPoint& p, double n) {
    if (!(n > 0.0)) {
        throw std::domain_error("h_n: N must be positive");
    }
    if (!(t_abs >= 0.0 && t_abs <= n)) {
        throw std::domain_error("h_n: t must lie in [0, N]");
    }
    return {t_abs / n, p.x, p.y};
}

std::pair<double, TorusPoint> h_n_inverse(const ModelPoint& mp, double n) {
    if (!(n > 0.0)) {
        throw std::domain_error("h_n_inverse: N must be positive");
    }
    if (!(mp.t >= 0.0 && mp.t <= 1.0)) {
        throw std::domain_error("h_n_inverse: t must lie in [0, 1]");
    }
    return {mp.t * n, TorusPoint{mp.x, mp.y}};
}

LineField3 LineField3::along(const Eigen::Vector3d& v) {
    const double n = v.norm();
    if (!(n > 0.0)) {
        throw std::invalid_argument("LineField3: zero direction");
    }
    return {v / n};
}

PlaneField3 PlaneField3::spanned_by(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    PlaneField3 p;
    p.span_a = a.normalized();
    p.span_b = b.normalized();
    Eigen::Vector3d n = p.span_a.cross(p.span_b);
    const double norm = n.norm();
    if (norm < 1e-12) {
        throw std::invalid_argument("PlaneField3: spanning vectors are parallel");
    }
    p.normal = n / norm;
    return p;
}

LineField3 pushforward_line(const TwistProfile& profile, const LineField3& line,
                            const ModelPoint& at) {
    const ModelPoint pre = g_inverse(profile, at);
    return LineField3::along(g_derivative(profile, pre) * line.dir);
}

PlaneField3 pushforward_plane(const TwistProfile& profile, const PlaneField3& plane,
                              const ModelPoint& at) {
    const ModelPoint pre = g_inverse(profile, at);
    const Eigen::Matrix3d d = g_derivative(profile, pre);
    try {
        return PlaneField3::spanned_by(d * plane.span_a, d * plane.span_b);
    } catch (const std::invalid_argument&) {
        // A shear cannot collapse a plane; reaching this is a logic error.
        throw std::logic_error("pushforward_plane: degenerate image plane");
    }
}

}  // namespace phlab
