#pragma once

#include <Eigen/Dense>

#include "phlab/torus_map.hpp"

namespace phlab {

/// Point of the model space [0,1] x T^2. Sets [a,b] x {p} are "horizontal",
/// sets {t} x T^2 are "vertical".
struct ModelPoint {
    double t = 0.0;  // in [0, 1]
    double x = 0.0;  // mod 1
    double y = 0.0;  // mod 1
};

/// Monotone twist profile: rho = 0 on [0, flat_lo], rho = 1 on [flat_hi, 1],
/// quintic smoothstep between (C^2 globally). A disabled profile is rho = 0
/// throughout, for the twist-off baselines.
class TwistProfile {
  public:
    TwistProfile(double flat_lo = 0.1, double flat_hi = 0.9);
    static TwistProfile disabled();

    double rho(double t) const;        // throws std::domain_error outside [0,1]
    double rho_prime(double t) const;

    double flat_lo() const { return flat_lo_; }
    double flat_hi() const { return flat_hi_; }
    bool enabled() const { return enabled_; }
    // sup rho' = 15/8 / (flat_hi - flat_lo), attained at the midpoint.
    double max_rho_prime() const;

  private:
    double flat_lo_, flat_hi_;
    bool enabled_ = true;
};

// The Dehn-twist shear (t, x, y) -> (t, x, y + rho(t)) and friends.
ModelPoint g_apply(const TwistProfile& profile, const ModelPoint& p);
ModelPoint g_inverse(const TwistProfile& profile, const ModelPoint& p);
// Derivative in (t, x, y) order: identity plus rho'(t) in the (y, t) slot.
Eigen::Matrix3d g_derivative(const TwistProfile& profile, const ModelPoint& p);

// Rescaling of the fundamental domain [0,N] x T^2 onto the model space:
// H_N(t, p) = (t/N, p). Throws std::domain_error if t_abs is outside [0, N].
ModelPoint h_n(double t_abs, const TorusPoint& p, double n);
std::pair<double, TorusPoint> h_n_inverse(const ModelPoint& mp, double n);

/// A line through a model point: a unit 3-vector in (t, x, y) coordinates.
struct LineField3 {
    Eigen::Vector3d dir = Eigen::Vector3d::UnitX();

    static LineField3 along(const Eigen::Vector3d& v);
};

/// A 2-plane: two independent unit spanning vectors plus the cached unit
/// normal (orthogonal to both within 1e-12).
struct PlaneField3 {
    Eigen::Vector3d span_a;
    Eigen::Vector3d span_b;
    Eigen::Vector3d normal;

    static PlaneField3 spanned_by(const Eigen::Vector3d& a, const Eigen::Vector3d& b);
};

// Pushforward by G at the target point `at`: the derivative is taken at
// g_inverse(at), which shares t with `at` since G preserves (t, x).
LineField3 pushforward_line(const TwistProfile& profile, const LineField3& line,
                            const ModelPoint& at);
PlaneField3 pushforward_plane(const TwistProfile& profile, const PlaneField3& plane,
                              const ModelPoint& at);

}  // namespace phlab
