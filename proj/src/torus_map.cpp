#include "phlab/torus_map.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace phlab {

double torus_distance(const TorusPoint& a, const TorusPoint& b) {
    return torus_displacement(a, b).norm();
}

Eigen::Vector2d torus_displacement(const TorusPoint& a, const TorusPoint& b) {
    return {wrap_signed(b.x - a.x), wrap_signed(b.y - a.y)};
}

LinearModel::LinearModel(const std::array<std::array<std::int64_t, 2>, 2>& m)
    : entries_(m) {
    const std::int64_t a = m[0][0], b = m[0][1], c = m[1][0], d = m[1][1];
    const std::int64_t det = a * d - b * c;
    if (det != 1) {
        throw std::invalid_argument("LinearModel: determinant must be 1");
    }
    const std::int64_t trace = a + d;
    if (std::abs(trace) <= 2) {
        throw std::invalid_argument("LinearModel: |trace| must exceed 2 (hyperbolic)");
    }
    det_m_minus_id_ = (a - 1) * (d - 1) - b * c;

    mat_ << static_cast<double>(a), static_cast<double>(b),
            static_cast<double>(c), static_cast<double>(d);
    inv_ << static_cast<double>(d), static_cast<double>(-b),
            static_cast<double>(-c), static_cast<double>(a);

    const double tr = static_cast<double>(trace);
    const double disc = std::sqrt(tr * tr - 4.0);
    lambda_u_ = (tr + (tr > 0 ? disc : -disc)) / 2.0;  // larger modulus
    lambda_s_ = 1.0 / lambda_u_;

    auto eigenvector = [&](double lambda) {
        // (m - lambda I) v = 0; pick the better conditioned row.
        Eigen::Vector2d v1(static_cast<double>(b), lambda - static_cast<double>(a));
        Eigen::Vector2d v2(lambda - static_cast<double>(d), static_cast<double>(c));
        Eigen::Vector2d v = (v1.norm() >= v2.norm()) ? v1 : v2;
        return Eigen::Vector2d(v.normalized());
    };
    v_u_ = eigenvector(lambda_u_);
    v_s_ = eigenvector(lambda_s_);

    // Dual covector: orthogonal to v_u, normalized against v_s.
    Eigen::Vector2d perp(-v_u_.y(), v_u_.x());
    const double scale = perp.dot(v_s_);
    if (std::fabs(scale) < 1e-14) {
        throw std::invalid_argument("LinearModel: eigenvectors are degenerate");
    }
    w_s_ = perp / scale;
}

std::vector<TorusPoint> fixed_points(const LinearModel& model) {
    // Exact integer enumeration: p = adj(m - I) v / det(m - I) must have both
    // components in [0, 1).
    const Eigen::Matrix2d& m = model.matrix();
    const std::int64_t a = std::llround(m(0, 0)) - 1;
    const std::int64_t b = std::llround(m(0, 1));
    const std::int64_t c = std::llround(m(1, 0));
    const std::int64_t d = std::llround(m(1, 1)) - 1;
    const std::int64_t det = a * d - b * c;
    if (det == 0) {
        throw std::domain_error("fixed_points: det(m - I) = 0");
    }
    const std::int64_t e = std::llabs(det);

    auto range = [](std::int64_t u, std::int64_t v) {
        // image of [0,1)^2 under the row (u, v)
        std::int64_t lo = std::min<std::int64_t>(0, u) + std::min<std::int64_t>(0, v);
        std::int64_t hi = std::max<std::int64_t>(0, u) + std::max<std::int64_t>(0, v);
        return std::pair<std::int64_t, std::int64_t>(lo, hi);
    };
    auto [lo0, hi0] = range(a, b);
    auto [lo1, hi1] = range(c, d);

    std::vector<TorusPoint> result;
    for (std::int64_t v0 = lo0; v0 <= hi0; ++v0) {
        for (std::int64_t v1 = lo1; v1 <= hi1; ++v1) {
            std::int64_t w0 = d * v0 - b * v1;
            std::int64_t w1 = -c * v0 + a * v1;
            if (det < 0) {
                w0 = -w0;
                w1 = -w1;
            }
            if (w0 >= 0 && w0 < e && w1 >= 0 && w1 < e) {
                result.push_back({static_cast<double>(w0) / static_cast<double>(e),
                                  static_cast<double>(w1) / static_cast<double>(e)});
            }
        }
    }
    if (result.size() != static_cast<std::size_t>(e)) {
        throw std::logic_error("fixed_points: enumeration count mismatch");
    }
    return result;
}

namespace {
// A wide taper keeps the map's higher derivatives small enough that central
// differences at step 1e-5 agree with the analytic derivative to 1e-6.
constexpr double kBumpPlateau = 0.4;
constexpr int kBumpFlowSteps = 256;
}  // namespace

double DaMap::bump_profile(double rho) {
    if (rho <= kBumpPlateau) return 1.0;
    if (rho >= 1.0) return 0.0;
    return 1.0 - smoothstep5((rho - kBumpPlateau) / (1.0 - kBumpPlateau));
}

double DaMap::bump_profile_deriv(double rho) {
    if (rho <= kBumpPlateau || rho >= 1.0) return 0.0;
    return -smoothstep5_deriv((rho - kBumpPlateau) / (1.0 - kBumpPlateau)) /
           (1.0 - kBumpPlateau);
}

DaMap::DaMap(LinearModel model, DaParams params)
    : model_(std::move(model)), params_(params) {
    if (params_.bump_radius <= 0.0) {
        throw std::invalid_argument("DaMap: bump radius must be positive");
    }
    if (params_.bump_strength <= 0.0) {
        throw std::invalid_argument("DaMap: bump strength must be positive");
    }
    const double sep = torus_distance(params_.sources[0], params_.sources[1]);
    if (sep <= 2.0 * params_.bump_radius) {
        throw std::invalid_argument("DaMap: bump disks must be disjoint");
    }
    for (const TorusPoint& s : params_.sources) {
        if (torus_distance(model_.apply(s), s) > 1e-12) {
            throw std::invalid_argument("DaMap: sources must be fixed points of the model");
        }
    }
    // Stable eigenvalue at the sources becomes lambda_s * e^strength.
    if (model_.stable_eigenvalue() * std::exp(params_.bump_strength) <= 1.0) {
        throw std::invalid_argument(
            "DaMap: bump strength too small, sources would not repel");
    }
}

int DaMap::nearest_source(const Eigen::Vector2d& p, Eigen::Vector2d* offset) const {
    TorusPoint tp = TorusPoint::wrapped(p);
    for (int i = 0; i < 2; ++i) {
        Eigen::Vector2d d = torus_displacement(params_.sources[i], tp);
        if (d.norm() < params_.bump_radius) {
            *offset = d;
            return i;
        }
    }
    return -1;
}

DaMap::BumpResult DaMap::bump_with_jacobian(const Eigen::Vector2d& p,
                                            bool want_jacobian) const {
    Eigen::Vector2d offset;
    const int src = nearest_source(p, &offset);
    if (src < 0) {
        return {p, Eigen::Matrix2d::Identity()};
    }

    const Eigen::Vector2d& vu = model_.unstable_direction();
    const Eigen::Vector2d& vs = model_.stable_direction();
    const Eigen::Vector2d& ws = model_.stable_covector();
    Eigen::Vector2d wu(-vs.y(), vs.x());
    wu /= wu.dot(vu);

    // Dual coordinates of the offset; the push moves s only.
    const double u = wu.dot(offset);
    const double s0 = ws.dot(offset);
    const double strength = params_.bump_strength;
    const double radius = params_.bump_radius;
    const double gamma = vu.dot(vs);

    // ds/dt = strength * beta(r / radius) * s with r = |u vu + s vs|;
    // two variational rows ride along.
    auto rhs = [&](double s, double js, double ju, double* ds, double* djs,
                   double* dju) {
        const double r2 = u * u + 2.0 * u * s * gamma + s * s;
        const double r = std::sqrt(std::max(r2, 0.0));
        const double rho = r / radius;
        const double beta = bump_profile(rho);
        double fs = strength * beta;
        double fu = 0.0;
        const double dbeta = bump_profile_deriv(rho);
        if (dbeta != 0.0 && r > 0.0) {
            const double drds = (s + u * gamma) / r;
            const double drdu = (u + s * gamma) / r;
            fs += strength * s * dbeta * drds / radius;
            fu = strength * s * dbeta * drdu / radius;
        }
        *ds = strength * beta * s;
        *djs = fs * js;
        *dju = fs * ju + fu;
    };

    double s = s0, js = 1.0, ju = 0.0;
    const double h = 1.0 / kBumpFlowSteps;
    for (int i = 0; i < kBumpFlowSteps; ++i) {
        double k1s, k1js, k1ju, k2s, k2js, k2ju, k3s, k3js, k3ju, k4s, k4js, k4ju;
        rhs(s, js, ju, &k1s, &k1js, &k1ju);
        rhs(s + 0.5 * h * k1s, js + 0.5 * h * k1js, ju + 0.5 * h * k1ju, &k2s, &k2js,
            &k2ju);
        rhs(s + 0.5 * h * k2s, js + 0.5 * h * k2js, ju + 0.5 * h * k2ju, &k3s, &k3js,
            &k3ju);
        rhs(s + h * k3s, js + h * k3js, ju + h * k3ju, &k4s, &k4js, &k4ju);
        s += h / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
        js += h / 6.0 * (k1js + 2.0 * k2js + 2.0 * k3js + k4js);
        ju += h / 6.0 * (k1ju + 2.0 * k2ju + 2.0 * k3ju + k4ju);
    }

    BumpResult out;
    out.point = p + (s - s0) * vs;
    out.jacobian = Eigen::Matrix2d::Identity();
    if (want_jacobian) {
        // Dual-coordinate jacobian [[1, 0], [ju, js]] conjugated back.
        Eigen::Matrix2d basis;
        basis.col(0) = vu;
        basis.col(1) = vs;
        Eigen::Matrix2d dual;
        dual.row(0) = wu.transpose();
        dual.row(1) = ws.transpose();
        Eigen::Matrix2d jd;
        jd << 1.0, 0.0, ju, js;
        out.jacobian = basis * jd * dual;
    }
    return out;
}

Eigen::Vector2d DaMap::bump_flow(const Eigen::Vector2d& p) const {
    return bump_with_jacobian(p, false).point;
}

TorusPoint DaMap::apply(const TorusPoint& p) const {
    Eigen::Vector2d pushed = bump_with_jacobian(p.vec(), false).point;
    return TorusPoint::wrapped(model_.matrix() * pushed);
}

Eigen::Matrix2d DaMap::derivative(const TorusPoint& p) const {
    return model_.matrix() * bump_with_jacobian(p.vec(), true).jacobian;
}

TorusPoint DaMap::apply_inverse(const TorusPoint& q) const {
    // Damped Newton on phi(p) = q in a lift, seeded by the linear inverse.
    Eigen::Vector2d p = model_.inverse() * q.vec();
    const int max_iter = 50;
    const double tol = 1e-12;
    auto residual = [&](const Eigen::Vector2d& cand) {
        const TorusPoint image = apply(TorusPoint::wrapped(cand));
        return Eigen::Vector2d(wrap_signed(image.x - q.x), wrap_signed(image.y - q.y));
    };
    Eigen::Vector2d resid = residual(p);
    for (int it = 0; it < max_iter; ++it) {
        if (resid.lpNorm<Eigen::Infinity>() < tol) {
            return TorusPoint::wrapped(p);
        }
        const Eigen::Matrix2d jac = derivative(TorusPoint::wrapped(p));
        const Eigen::Vector2d step = jac.inverse() * resid;
        double damping = 1.0;
        for (int half = 0; half < 12; ++half) {
            const Eigen::Vector2d cand = p - damping * step;
            const Eigen::Vector2d cand_resid = residual(cand);
            if (cand_resid.norm() < resid.norm()) {
                p = cand;
                resid = cand_resid;
                break;
            }
            damping *= 0.5;
        }
    }
    if (resid.lpNorm<Eigen::Infinity>() < tol) {
        return TorusPoint::wrapped(p);
    }
    std::ostringstream msg;
    msg << "DaMap::apply_inverse: Newton failed to converge at (" << q.x << ", "
        << q.y << ")";
    throw std::runtime_error(msg.str());
}

}  // namespace phlab
