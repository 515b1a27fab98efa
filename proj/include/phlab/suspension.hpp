#pragma once

#include <Eigen/Dense>
#include <array>

#include "phlab/torus_map.hpp"

namespace phlab {

/// Point of the mapping torus (T^2 x [0,1)) / ((p,1) ~ (phi(p),0)).
struct SuspensionPoint {
    TorusPoint base;
    double s = 0.0;  // suspension coordinate in [0, 1)
};

// Unit-speed suspension flow; crossing s = 1 applies the map, crossing
// backwards applies its inverse.
SuspensionPoint suspension_flow(const DaMap& map, SuspensionPoint q, double t);

/// Ordered product of 2x2 derivative matrices, renormalized periodically with
/// the scale accumulated in log space. The suspension's third (flow) entry is
/// exactly 1 and is kept implicit.
///
/// The renormalized product resolves the dominant singular value; the
/// contracted one drowns in roundoff for long products, so ftle() recovers it
/// from the inverse cocycle at the orbit endpoint instead.
class Cocycle {
  public:
    void compose_left(const Eigen::Matrix2d& factor);

    // Raw matrix after renormalization and the accumulated log scale.
    const Eigen::Matrix2d& matrix() const { return m_; }
    double log_scale() const { return log_scale_; }

    // log of the largest singular value, scale restored.
    double log_top_singular_value() const;

  private:
    Eigen::Matrix2d m_ = Eigen::Matrix2d::Identity();
    double log_scale_ = 0.0;
    int factors_ = 0;
};

// Derivative cocycle of phi^n at p (n may be negative).
Cocycle map_cocycle(const DaMap& map, const TorusPoint& p, int n);

// Base block of the suspension-flow derivative over time t from q.
Cocycle flow_cocycle(const DaMap& map, const SuspensionPoint& q, double t);

// Finite-time Lyapunov exponents of the suspension flow: log singular values
// of the 3x3 cocycle divided by |t|, sorted ascending. The flow-direction
// exponent is exactly 0. Throws std::domain_error at t = 0.
std::array<double, 3> ftle(const DaMap& map, const SuspensionPoint& q, double t);

// Direction (angle in [0, pi)) of (D phi^n at p)^{-1} applied to a fixed
// generic seed vector, renormalized every step. n = 0 returns the seed angle.
double finite_time_stable_direction(const DaMap& map, const TorusPoint& p, int n);

}  // namespace phlab
