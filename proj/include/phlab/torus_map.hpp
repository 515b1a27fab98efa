#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "phlab/numerics.hpp"

namespace phlab {

/// Point on the flat torus T^2 = R^2/Z^2, stored as the canonical
/// representative in [0,1)^2.
struct TorusPoint {
    double x = 0.0;
    double y = 0.0;

    static TorusPoint wrapped(double px, double py) {
        return {wrap_unit(px), wrap_unit(py)};
    }
    static TorusPoint wrapped(const Eigen::Vector2d& v) {
        return wrapped(v.x(), v.y());
    }

    Eigen::Vector2d vec() const { return {x, y}; }
};

// Flat-torus metric.
double torus_distance(const TorusPoint& a, const TorusPoint& b);

// Shortest displacement vector from a to b (each component in [-1/2, 1/2)).
Eigen::Vector2d torus_displacement(const TorusPoint& a, const TorusPoint& b);

/// Hyperbolic toral automorphism given by an integer matrix with det = 1.
class LinearModel {
  public:
    explicit LinearModel(const std::array<std::array<std::int64_t, 2>, 2>& m);

    const Eigen::Matrix2d& matrix() const { return mat_; }
    const Eigen::Matrix2d& inverse() const { return inv_; }
    std::int64_t det_minus_identity() const { return det_m_minus_id_; }

    double unstable_eigenvalue() const { return lambda_u_; }
    double stable_eigenvalue() const { return lambda_s_; }
    // Unit eigenvectors.
    const Eigen::Vector2d& unstable_direction() const { return v_u_; }
    const Eigen::Vector2d& stable_direction() const { return v_s_; }
    // Dual covector of the stable direction: w_s . v_s = 1, w_s . v_u = 0.
    const Eigen::Vector2d& stable_covector() const { return w_s_; }

    TorusPoint apply(const TorusPoint& p) const {
        return TorusPoint::wrapped(mat_ * p.vec());
    }
    TorusPoint apply_inverse(const TorusPoint& p) const {
        return TorusPoint::wrapped(inv_ * p.vec());
    }

  private:
    std::array<std::array<std::int64_t, 2>, 2> entries_;
    Eigen::Matrix2d mat_;
    Eigen::Matrix2d inv_;
    std::int64_t det_m_minus_id_;
    double lambda_u_, lambda_s_;
    Eigen::Vector2d v_u_, v_s_, w_s_;
};

// All fixed points of the automorphism on the torus: solutions of
// (m - I) p = v, v integral, with p in [0,1)^2. Count = |det(m - I)|.
// Throws std::domain_error when det(m - I) = 0.
std::vector<TorusPoint> fixed_points(const LinearModel& model);

/// Parameters of the derived-from-Anosov surgery: a push along the stable
/// direction supported in disjoint disks around the two fixed sources.
struct DaParams {
    std::array<TorusPoint, 2> sources;
    double bump_radius = 0.08;
    double bump_strength = 1.8;  // log of the at-source push factor
};

/// The modified map phi = L o B: B is the time-one map of the vector field
///     V(p) = strength * beta(|p - sigma| / radius) * s(p) * v_s,
/// s(p) the dual stable coordinate of p - sigma, beta a plateau bump with
/// beta(0) = 1 and support [0, 1). B moves points inside stable lines only,
/// so the linear stable foliation stays invariant; L is the automorphism.
///
/// Nonwandering set: a nontrivial hyperbolic attractor plus the two sources.
/// At each source the derivative has eigenvalues
/// (lambda_s * e^strength, lambda_u), both of modulus > 1.
class DaMap {
  public:
    DaMap(LinearModel model, DaParams params);

    const LinearModel& model() const { return model_; }
    const DaParams& params() const { return params_; }

    TorusPoint apply(const TorusPoint& p) const;
    // Newton inversion seeded by m^{-1}; tolerance 1e-12, at most 50 steps.
    // Throws std::runtime_error when the solver fails to converge.
    TorusPoint apply_inverse(const TorusPoint& q) const;
    Eigen::Matrix2d derivative(const TorusPoint& p) const;

    // Time-one map of the push field alone (and its derivative), exposed for
    // verification; identity outside the bump disks.
    Eigen::Vector2d bump_flow(const Eigen::Vector2d& p) const;

    // Smooth radial profile of the push field, beta(rho) for rho = r/radius:
    // 1 on [0, plateau], quintic decay to 0 at 1.
    static double bump_profile(double rho);
    static double bump_profile_deriv(double rho);

  private:
    struct BumpResult {
        Eigen::Vector2d point;
        Eigen::Matrix2d jacobian;
    };
    BumpResult bump_with_jacobian(const Eigen::Vector2d& p, bool want_jacobian) const;
    int nearest_source(const Eigen::Vector2d& p, Eigen::Vector2d* offset) const;

    LinearModel model_;
    DaParams params_;
};

}  // namespace phlab
