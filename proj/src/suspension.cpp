#include "phlab/suspension.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace phlab {

SuspensionPoint suspension_flow(const DaMap& map, SuspensionPoint q, double t) {
    const double total = q.s + t;
    const double floor = std::floor(total);
    const long crossings = static_cast<long>(floor);
    TorusPoint base = q.base;
    for (long i = 0; i < crossings; ++i) base = map.apply(base);
    for (long i = 0; i > crossings; --i) base = map.apply_inverse(base);
    double s = total - floor;
    if (s >= 1.0) s = 0.0;
    return {base, s};
}

void Cocycle::compose_left(const Eigen::Matrix2d& factor) {
    m_ = factor * m_;
    if (++factors_ % 10 == 0) {
        const double n = m_.norm();
        if (n > 0.0 && std::isfinite(n)) {
            m_ /= n;
            log_scale_ += std::log(n);
        }
    }
}

double Cocycle::log_top_singular_value() const {
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(m_);
    return std::log(svd.singularValues()(0)) + log_scale_;
}

Cocycle map_cocycle(const DaMap& map, const TorusPoint& p, int n) {
    Cocycle c;
    TorusPoint q = p;
    if (n >= 0) {
        for (int i = 0; i < n; ++i) {
            c.compose_left(map.derivative(q));
            q = map.apply(q);
        }
    } else {
        for (int i = 0; i > n; --i) {
            q = map.apply_inverse(q);
            c.compose_left(map.derivative(q).inverse());
        }
    }
    return c;
}

Cocycle flow_cocycle(const DaMap& map, const SuspensionPoint& q, double t) {
    const long crossings = static_cast<long>(std::floor(q.s + t));
    return map_cocycle(map, q.base, static_cast<int>(crossings));
}

namespace {

// log sigma_max and log sigma_min of the product of derivatives along a
// stored orbit. The minimum comes from the reversed product of inverses,
// sigma_min(M) = 1/sigma_max(M^{-1}); each side only tracks dominant growth,
// which survives roundoff where the contracted direction of the forward
// product does not.
std::pair<double, double> cocycle_log_extremes(const DaMap& map,
                                               const std::vector<TorusPoint>& orbit) {
    Cocycle forward;
    for (const TorusPoint& p : orbit) {
        forward.compose_left(map.derivative(p));
    }
    Cocycle inverse;
    for (auto it = orbit.rbegin(); it != orbit.rend(); ++it) {
        inverse.compose_left(map.derivative(*it).inverse());
    }
    return {forward.log_top_singular_value(), -inverse.log_top_singular_value()};
}

}  // namespace

std::array<double, 3> ftle(const DaMap& map, const SuspensionPoint& q, double t) {
    if (t == 0.0) {
        throw std::domain_error("ftle: time must be nonzero");
    }
    const long crossings = static_cast<long>(std::floor(q.s + t));
    const long steps = std::labs(crossings);

    std::vector<TorusPoint> orbit;
    orbit.reserve(static_cast<std::size_t>(steps));
    if (crossings >= 0) {
        TorusPoint p = q.base;
        for (long i = 0; i < steps; ++i) {
            orbit.push_back(p);
            p = map.apply(p);
        }
    } else {
        // D phi^{-m}(q) = [D phi^m at phi^{-m}(q)]^{-1}: walk back once, then
        // read the forward cocycle along the reversed backward orbit.
        TorusPoint p = q.base;
        std::vector<TorusPoint> back;
        for (long i = 0; i < steps; ++i) {
            p = map.apply_inverse(p);
            back.push_back(p);
        }
        orbit.assign(back.rbegin(), back.rend());
    }

    auto [log_max, log_min] = cocycle_log_extremes(map, orbit);
    if (crossings < 0) {
        const double tmp = log_max;
        log_max = -log_min;
        log_min = -tmp;
    }
    std::array<double, 3> exps = {log_min / std::fabs(t), 0.0, log_max / std::fabs(t)};
    std::sort(exps.begin(), exps.end());
    return exps;
}

double finite_time_stable_direction(const DaMap& map, const TorusPoint& p, int n) {
    if (n < 0) {
        throw std::domain_error("finite_time_stable_direction: n must be >= 0");
    }
    const Eigen::Vector2d seed(std::cos(1.0), std::sin(1.0));
    if (n == 0) {
        return wrap_line_angle(std::atan2(seed.y(), seed.x()));
    }
    std::vector<TorusPoint> orbit(static_cast<std::size_t>(n));
    TorusPoint q = p;
    for (int i = 0; i < n; ++i) {
        orbit[static_cast<std::size_t>(i)] = q;
        q = map.apply(q);
    }
    Eigen::Vector2d w = seed;
    for (int i = n - 1; i >= 0; --i) {
        w = map.derivative(orbit[static_cast<std::size_t>(i)]).inverse() * w;
        const double norm = w.norm();
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw std::runtime_error(
                "finite_time_stable_direction: cocycle conditioning failure");
        }
        w /= norm;
    }
    return wrap_line_angle(std::atan2(w.y(), w.x()));
}

}  // namespace phlab
