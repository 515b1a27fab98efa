#pragma once

#include "phlab/torus_map.hpp"

namespace phlab {

/// The convex leaf profile on (0, 1/2): alpha(x) = -ln sin(2 pi x).
/// alpha'' = 4 pi^2 / sin^2(2 pi x) > 0, the derivative vanishes exactly at
/// x = 1/4, and alpha blows up at both ends.
struct AlphaProfile {
    double value(double x) const;       // throws std::domain_error at {0, 1/2}
    double derivative(double x) const;  // -2 pi cot(2 pi x)
};

struct PairMargin {
    double min_angle = 0.0;  // radians, distance on R/(pi Z)
    double argmin_x = 0.0;
};

/// The two model foliations on the separating torus: leaves of the stable
/// family are graphs of alpha(x) + t on (0,1/2) and alpha(x - 1/2) + t on
/// (1/2,1), with vertical compact leaves at x = 0 and x = 1/2; the unstable
/// family is the stable one translated by 1/4. Directions depend on x only.
class FoliationModel {
  public:
    explicit FoliationModel(AlphaProfile profile = {}) : alpha_(profile) {}

    const AlphaProfile& alpha() const { return alpha_; }

    // Leaf direction through (x, .) as an angle in [0, pi); pi/2 on the
    // compact leaves, continuous as a map into R/(pi Z).
    double s_direction(double x) const;
    double u_direction(double x) const;  // = s_direction(x - 1/4)

    // y-invariance made explicit: the angle at any point of the torus.
    double s_direction_at(const TorusPoint& p) const { return s_direction(p.x); }
    double u_direction_at(const TorusPoint& p) const { return u_direction(p.x); }

    // Minimum angular distance between the two direction fields over an
    // x-grid, refined by golden-section search around the coarse argmin.
    // Throws std::runtime_error if any sampled margin falls below 1e-12.
    PairMargin pair_margin(int resolution) const;

  private:
    AlphaProfile alpha_;
};

}  // namespace phlab
