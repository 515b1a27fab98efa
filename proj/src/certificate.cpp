#include "phlab/certificate.hpp"

#include <cmath>
#include <sstream>

namespace phlab {

namespace {

Eigen::Vector3d torus_dir(double angle) {
    return {0.0, std::cos(angle), std::sin(angle)};
}

const Eigen::Vector3d kFlowDir = Eigen::Vector3d::UnitX();  // e_t in (t,x,y)

struct WorstMargin {
    double margin = 0.0;
    double c = 0.0;
};

// min over |c| <= c_max of |<base + c tilt, n>| / |base + c tilt|. The
// derivative of the squared ratio has a single stationary point besides the
// numerator zero, and it is a local maximum, so the interval minimum sits at
// an endpoint -- unless the numerator vanishes inside, where the margin is 0.
WorstMargin worst_line_plane_margin(const Eigen::Vector3d& base,
                                    const Eigen::Vector3d& tilt,
                                    const Eigen::Vector3d& unit_normal,
                                    double c_max) {
    const double a = base.dot(unit_normal);
    const double b = tilt.dot(unit_normal);
    if (b != 0.0) {
        const double c0 = -a / b;
        if (std::fabs(c0) <= c_max) {
            return {0.0, c0};
        }
    }
    WorstMargin out;
    out.margin = std::numeric_limits<double>::infinity();
    for (double c : {-c_max, c_max}) {
        const Eigen::Vector3d v = base + c * tilt;
        const double m = std::fabs(v.dot(unit_normal)) / v.norm();
        if (m < out.margin) {
            out.margin = m;
            out.c = c;
        }
    }
    return out;
}

}  // namespace

PlaneField3 cs_plane(const FoliationModel& foliation, double x) {
    return PlaneField3::spanned_by(kFlowDir, torus_dir(foliation.s_direction(x)));
}

PlaneField3 cu_plane(const FoliationModel& foliation, double x) {
    return PlaneField3::spanned_by(kFlowDir, torus_dir(foliation.u_direction(x)));
}

LineField3 ss_line(const FoliationModel& foliation, double x, double c, double n) {
    if (!(n > 0.0)) {
        throw std::domain_error("ss_line: N must be positive");
    }
    return LineField3::along(torus_dir(foliation.s_direction(x)) + (c / n) * kFlowDir);
}

LineField3 uu_line(const FoliationModel& foliation, double x, double c, double n) {
    if (!(n > 0.0)) {
        throw std::domain_error("uu_line: N must be positive");
    }
    return LineField3::along(torus_dir(foliation.u_direction(x)) + (c / n) * kFlowDir);
}

MarginReport check_transversality(const FoliationModel& foliation,
                                  const TwistProfile& twist, double n, int grid_t,
                                  int grid_x, double c_max, double threshold) {
    if (!(n > 0.0)) {
        throw std::domain_error("check_transversality: N must be positive");
    }
    if (grid_x < 32 || grid_t < 2) {
        throw std::invalid_argument(
            "check_transversality: grid must be at least 2 x 32");
    }
    if (c_max < 0.0) {
        throw std::invalid_argument("check_transversality: c_max must be >= 0");
    }

    MarginReport report;
    report.n = n;
    report.grid_t = grid_t;
    report.grid_x = grid_x;
    report.c_max = c_max;
    report.threshold = threshold;
    report.margin_cs_uu = std::numeric_limits<double>::infinity();
    report.margin_cu_ss = std::numeric_limits<double>::infinity();

    std::vector<Eigen::Vector3d> vs(static_cast<std::size_t>(grid_x));
    std::vector<Eigen::Vector3d> vu(static_cast<std::size_t>(grid_x));
    std::vector<Eigen::Vector3d> ncs(static_cast<std::size_t>(grid_x));
    for (int j = 0; j < grid_x; ++j) {
        const double x = static_cast<double>(j) / grid_x;
        vs[static_cast<std::size_t>(j)] = torus_dir(foliation.s_direction(x));
        vu[static_cast<std::size_t>(j)] = torus_dir(foliation.u_direction(x));
        ncs[static_cast<std::size_t>(j)] =
            cs_plane(foliation, x).normal;
    }

    for (int i = 0; i < grid_t; ++i) {
        const double t = static_cast<double>(i) / (grid_t - 1);
        const double rp = twist.rho_prime(t);
        const Eigen::Vector3d sheared_flow(1.0, 0.0, rp);  // DG e_t
        for (int j = 0; j < grid_x; ++j) {
            const double x = static_cast<double>(j) / grid_x;
            const std::size_t jj = static_cast<std::size_t>(j);

            // G_* uu tilts by (c/N)(DG e_t); the cs normal is fixed.
            WorstMargin csuu = worst_line_plane_margin(
                vu[jj], sheared_flow / n, ncs[jj], c_max);
            if (csuu.margin < report.margin_cs_uu) {
                report.margin_cs_uu = csuu.margin;
                report.argmin_cs_uu = {t, x, csuu.c};
            }

            // ss tilts by (c/N) e_t against the pushed cu-plane normal.
            const Eigen::Vector3d ngcu = sheared_flow.cross(vu[jj]).normalized();
            WorstMargin cuss = worst_line_plane_margin(
                vs[jj], kFlowDir / n, ngcu, c_max);
            if (cuss.margin < report.margin_cu_ss) {
                report.margin_cu_ss = cuss.margin;
                report.argmin_cu_ss = {t, x, cuss.c};
            }
        }
    }

    report.pass = report.margin_cs_uu >= threshold && report.margin_cu_ss >= threshold;
    return report;
}

FindN0Result find_n0(const FoliationModel& foliation, const TwistProfile& twist,
                     double threshold, double c_max, int grid_t, int grid_x) {
    FindN0Result result;

    const MarginReport limit =
        check_transversality(foliation, twist, 1.0, grid_t, grid_x, 0.0, threshold);
    result.limit_margin = limit.combined();
    if (threshold >= result.limit_margin) {
        std::ostringstream msg;
        msg << "find_n0: unreachable threshold " << threshold
            << " (tilt-free limit margin is " << result.limit_margin << ")";
        throw UnreachableThresholdError(msg.str());
    }

    auto eval = [&](double n) {
        return check_transversality(foliation, twist, n, grid_t, grid_x, c_max,
                                    threshold);
    };

    const double kCap = 1e9;
    double n = 1.0;  // search floor
    MarginReport rep = eval(n);
    double prev_margin = rep.combined();
    while (!rep.pass) {
        n *= 2.0;
        if (n > kCap) {
            throw std::runtime_error("find_n0: doubling search exceeded N cap");
        }
        rep = eval(n);
        if (rep.combined() < prev_margin - 1e-12) {
            result.monotone_along_search = false;
        }
        prev_margin = rep.combined();
    }

    if (n == 1.0) {
        result.n0 = 1.0;
        result.report_at_n0 = rep;
        return result;
    }

    double lo = n / 2.0;
    double hi = n;
    double lo_margin = eval(lo).combined();
    double hi_margin = rep.combined();
    while (hi - lo > 1e-3 * hi) {
        const double mid = 0.5 * (lo + hi);
        const MarginReport mid_rep = eval(mid);
        const double mid_margin = mid_rep.combined();
        if (mid_margin < lo_margin - 1e-12 || mid_margin > hi_margin + 1e-12) {
            result.monotone_along_search = false;
        }
        if (mid_rep.pass) {
            hi = mid;
            hi_margin = mid_margin;
        } else {
            lo = mid;
            lo_margin = mid_margin;
        }
    }
    result.n0 = hi;
    result.report_at_n0 = eval(hi);
    return result;
}

}  // namespace phlab
