#include "phlab/foliation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace phlab {

double AlphaProfile::value(double x) const {
    if (!(x > 0.0 && x < 0.5)) {
        throw std::domain_error("AlphaProfile: x must lie in (0, 1/2)");
    }
    return -std::log(std::sin(2.0 * kPi * x));
}

double AlphaProfile::derivative(double x) const {
    if (!(x > 0.0 && x < 0.5)) {
        throw std::domain_error("AlphaProfile: x must lie in (0, 1/2)");
    }
    return -2.0 * kPi / std::tan(2.0 * kPi * x);
}

double FoliationModel::s_direction(double x) const {
    double xr = wrap_unit(x);
    if (xr >= 0.5) xr -= 0.5;  // both halves carry the same graphs
    if (xr == 0.0) return kPi / 2.0;
    return wrap_line_angle(std::atan(alpha_.derivative(xr)));
}

double FoliationModel::u_direction(double x) const {
    return s_direction(x - 0.25);
}

PairMargin FoliationModel::pair_margin(int resolution) const {
    if (resolution < 16) {
        throw std::invalid_argument("pair_margin: resolution must be >= 16");
    }
    auto margin = [this](double x) {
        return line_angle_distance(s_direction(x), u_direction(x));
    };

    double best = kPi;
    int best_i = 0;
    for (int i = 0; i < resolution; ++i) {
        const double x = static_cast<double>(i) / resolution;
        const double m = margin(x);
        if (m < 1e-12) {
            std::ostringstream msg;
            msg << "pair_margin: foliations tangent at x = " << x
                << " (profile violates transversality)";
            throw std::runtime_error(msg.str());
        }
        if (m < best) {
            best = m;
            best_i = i;
        }
    }

    // Golden-section refinement over the 3-cell window around the argmin.
    double a = static_cast<double>(best_i - 1) / resolution;
    double b = static_cast<double>(best_i + 1) / resolution;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = margin(c), fd = margin(d);
    while (b - a > 1e-10) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = margin(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = margin(d);
        }
    }
    const double xmin = 0.5 * (a + b);
    const double refined = margin(xmin);
    PairMargin out;
    out.min_angle = std::min(best, refined);
    out.argmin_x = (refined <= best) ? wrap_unit(xmin)
                                     : static_cast<double>(best_i) / resolution;
    return out;
}

}  // namespace phlab
