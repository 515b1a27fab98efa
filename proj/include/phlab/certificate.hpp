#pragma once

#include "phlab/foliation.hpp"
#include "phlab/twist.hpp"

namespace phlab {

// Bundle samples over the fundamental domain, in model (t, x, y) coordinates.
// The center-stable/center-unstable planes contain the flow direction e_t and
// depend on x alone; the strong bundles tilt into the flow direction by c/N,
// with |c| bounded by the configured worst case.
PlaneField3 cs_plane(const FoliationModel& foliation, double x);
PlaneField3 cu_plane(const FoliationModel& foliation, double x);
LineField3 ss_line(const FoliationModel& foliation, double x, double c, double n);
LineField3 uu_line(const FoliationModel& foliation, double x, double c, double n);

struct MarginArgmin {
    double t = 0.0;
    double x = 0.0;
    double c = 0.0;
};

struct MarginReport {
    double n = 0.0;
    double margin_cs_uu = 0.0;  // E_A^{cs} vs G_* E_R^{uu}
    double margin_cu_ss = 0.0;  // G_* E_R^{cu} vs E_A^{ss}
    MarginArgmin argmin_cs_uu;
    MarginArgmin argmin_cu_ss;
    int grid_t = 0;
    int grid_x = 0;
    double c_max = 0.0;
    double threshold = 0.0;
    bool pass = false;

    double combined() const { return std::min(margin_cs_uu, margin_cu_ss); }
};

// Transversality margins (sine of line-plane angle) minimized over a
// (t, x)-grid and over the worst tilt |c| <= c_max. The minimum over c sits at
// an endpoint unless the numerator changes sign inside the interval, in which
// case the margin is zero there; both cases are evaluated exactly.
// y never enters: every field is invariant under y-translation.
MarginReport check_transversality(const FoliationModel& foliation,
                                  const TwistProfile& twist, double n, int grid_t,
                                  int grid_x, double c_max, double threshold);

struct FindN0Result {
    double n0 = 0.0;
    MarginReport report_at_n0;
    double limit_margin = 0.0;  // c = 0 margins, the N -> infinity value
    bool monotone_along_search = true;
};

/// Thrown by find_n0 when the threshold exceeds the limiting (tilt-free)
/// margin, so no N can satisfy it.
class UnreachableThresholdError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Minimal N with both margins >= threshold: doubling search from the floor
// N = 1, then bisection to relative precision 1e-3.
FindN0Result find_n0(const FoliationModel& foliation, const TwistProfile& twist,
                     double threshold, double c_max, int grid_t, int grid_x);

}  // namespace phlab
