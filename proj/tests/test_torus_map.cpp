#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "phlab/config.hpp"
#include "phlab/da_verify.hpp"
#include "phlab/numerics.hpp"
#include "phlab/torus_map.hpp"

using namespace phlab;

namespace {

LinearModel default_model() { return LinearModel({{{3, 1}, {2, 1}}}); }

DaMap default_map() {
    LinearModel model = default_model();
    auto fixed = fixed_points(model);
    REQUIRE(fixed.size() == 2);
    DaParams params;
    params.sources = {fixed[0], fixed[1]};
    params.bump_radius = 0.08;
    params.bump_strength = 1.8;
    return DaMap(model, params);
}

// Independent route: every fixed point is rational with denominator
// |det(m - I)|; enumerate that grid and test (m - I) p integral exactly.
std::vector<TorusPoint> fixed_points_oracle(
    const std::array<std::array<std::int64_t, 2>, 2>& m) {
    const std::int64_t a = m[0][0] - 1, b = m[0][1], c = m[1][0], d = m[1][1] - 1;
    const std::int64_t e = std::llabs(a * d - b * c);
    std::vector<TorusPoint> out;
    for (std::int64_t i = 0; i < e; ++i) {
        for (std::int64_t j = 0; j < e; ++j) {
            // p = (i/e, j/e); (m - I) p integral iff e divides both rows.
            if ((a * i + b * j) % e == 0 && (c * i + d * j) % e == 0) {
                out.push_back({static_cast<double>(i) / e, static_cast<double>(j) / e});
            }
        }
    }
    return out;
}

// Independent integration of the push field with an embedded RKF45 pair.
Eigen::Vector2d bump_flow_oracle(const LinearModel& model, const DaParams& params,
                                 const TorusPoint& source, Eigen::Vector2d p,
                                 double tol = 1e-13) {
    const Eigen::Vector2d vs = model.stable_direction();
    const Eigen::Vector2d ws = model.stable_covector();
    auto field = [&](const Eigen::Vector2d& q) -> Eigen::Vector2d {
        const Eigen::Vector2d d = q - source.vec();
        const double rho = d.norm() / params.bump_radius;
        return params.bump_strength * DaMap::bump_profile(rho) * ws.dot(d) * vs;
    };
    double t = 0.0, h = 0.05;
    while (t < 1.0) {
        if (t + h > 1.0) h = 1.0 - t;
        const Eigen::Vector2d k1 = field(p);
        const Eigen::Vector2d k2 = field(p + h * 0.25 * k1);
        const Eigen::Vector2d k3 = field(p + h * (3.0 / 32 * k1 + 9.0 / 32 * k2));
        const Eigen::Vector2d k4 = field(
            p + h * (1932.0 / 2197 * k1 - 7200.0 / 2197 * k2 + 7296.0 / 2197 * k3));
        const Eigen::Vector2d k5 =
            field(p + h * (439.0 / 216 * k1 - 8.0 * k2 + 3680.0 / 513 * k3 -
                           845.0 / 4104 * k4));
        const Eigen::Vector2d k6 =
            field(p + h * (-8.0 / 27 * k1 + 2.0 * k2 - 3544.0 / 2565 * k3 +
                           1859.0 / 4104 * k4 - 11.0 / 40 * k5));
        const Eigen::Vector2d y4 = p + h * (25.0 / 216 * k1 + 1408.0 / 2565 * k3 +
                                            2197.0 / 4104 * k4 - 0.2 * k5);
        const Eigen::Vector2d y5 =
            p + h * (16.0 / 135 * k1 + 6656.0 / 12825 * k3 + 28561.0 / 56430 * k4 -
                     9.0 / 50 * k5 + 2.0 / 55 * k6);
        const double err = (y5 - y4).norm();
        if (err <= tol || h <= 1e-12) {
            p = y5;
            t += h;
        }
        const double scale = (err > 0.0) ? 0.9 * std::pow(tol / err, 0.2) : 4.0;
        h *= std::clamp(scale, 0.1, 4.0);
    }
    return p;
}

}  // namespace

TEST_CASE("linear model eigen-structure") {
    LinearModel m = default_model();
    const double sqrt3 = std::sqrt(3.0);
    CHECK(m.unstable_eigenvalue() == doctest::Approx(2.0 + sqrt3).epsilon(1e-14));
    CHECK(m.stable_eigenvalue() == doctest::Approx(2.0 - sqrt3).epsilon(1e-14));

    // m v = lambda v for both unit eigenvectors.
    CHECK((m.matrix() * m.unstable_direction() -
           m.unstable_eigenvalue() * m.unstable_direction())
              .norm() < 1e-13);
    CHECK((m.matrix() * m.stable_direction() -
           m.stable_eigenvalue() * m.stable_direction())
              .norm() < 1e-13);

    // Dual normalization of the stable covector.
    CHECK(m.stable_covector().dot(m.stable_direction()) == doctest::Approx(1.0));
    CHECK(std::fabs(m.stable_covector().dot(m.unstable_direction())) < 1e-14);
}

TEST_CASE("linear model rejects non-hyperbolic and non-unimodular input") {
    CHECK_THROWS_AS(LinearModel({{{1, 1}, {0, 1}}}), std::invalid_argument);  // parabolic
    CHECK_THROWS_AS(LinearModel({{{2, 0}, {0, 2}}}), std::invalid_argument);  // det 4
}

TEST_CASE("fixed points match the exact rational enumeration") {
    SUBCASE("two fixed points for the default model") {
        const std::array<std::array<std::int64_t, 2>, 2> m = {{{3, 1}, {2, 1}}};
        auto got = fixed_points(LinearModel(m));
        auto expected = fixed_points_oracle(m);
        REQUIRE(got.size() == 2);
        REQUIRE(expected.size() == 2);
        for (const TorusPoint& e : expected) {
            bool found = false;
            for (const TorusPoint& g : got) {
                if (torus_distance(e, g) < 1e-12) found = true;
            }
            CHECK(found);
        }
        // The origin is fixed by every automorphism.
        CHECK(torus_distance(got[0], {0.0, 0.0}) < 1e-12);
    }
    SUBCASE("single fixed point when |det(m - I)| = 1") {
        auto got = fixed_points(LinearModel({{{2, 1}, {1, 1}}}));
        REQUIRE(got.size() == 1);
        CHECK(torus_distance(got[0], {0.0, 0.0}) < 1e-12);
    }
    SUBCASE("det(m - I) = 2 - trace never vanishes for a hyperbolic model") {
        CHECK(default_model().det_minus_identity() == -2);
        CHECK(LinearModel({{{2, 1}, {1, 1}}}).det_minus_identity() == -1);
    }
}

TEST_CASE("da map is linear outside the bumps and fixes the sources") {
    DaMap map = default_map();
    const Eigen::Matrix2d m = map.model().matrix();

    SUBCASE("linear region") {
        for (double x : {0.2, 0.3, 0.7}) {
            for (double y : {0.2, 0.6, 0.9}) {
                TorusPoint p{x, y};
                bool outside = true;
                for (const auto& s : map.params().sources) {
                    if (torus_distance(s, p) <= map.params().bump_radius) outside = false;
                }
                if (!outside) continue;
                const TorusPoint expected = TorusPoint::wrapped(m * p.vec());
                CHECK(torus_distance(map.apply(p), expected) < 1e-15);
                CHECK((map.derivative(p) - m).norm() == 0.0);
            }
        }
    }
    SUBCASE("sources are fixed") {
        for (const TorusPoint& s : map.params().sources) {
            CHECK(torus_distance(map.apply(s), s) < 1e-13);
        }
    }
}

TEST_CASE("da map inside a bump matches the independent flow integration") {
    DaMap map = default_map();
    const TorusPoint source = map.params().sources[1];  // (1/2, 0)
    for (double frac : {0.15, 0.45, 0.8}) {
        for (double angle : {0.3, 1.7, 3.9, 5.2}) {
            const double r = frac * map.params().bump_radius;
            const Eigen::Vector2d p =
                source.vec() + r * Eigen::Vector2d(std::cos(angle), std::sin(angle));
            const Eigen::Vector2d pushed =
                bump_flow_oracle(map.model(), map.params(), source, p);
            const TorusPoint expected = TorusPoint::wrapped(map.model().matrix() * pushed);
            CHECK(torus_distance(map.apply(TorusPoint::wrapped(p)), expected) < 1e-9);
        }
    }
}

TEST_CASE("da derivative: finite differences, source eigenvalues, orientation") {
    DaMap map = default_map();

    SUBCASE("central differences on a coarse grid including bump interiors") {
        const double h = 1e-5;
        for (int i = 0; i < 24; ++i) {
            for (int j = 0; j < 24; ++j) {
                const TorusPoint p{i / 24.0 + 0.013, j / 24.0 + 0.007};
                const Eigen::Matrix2d d = map.derivative(p);
                CHECK(d.determinant() > 0.0);
                for (int axis = 0; axis < 2; ++axis) {
                    TorusPoint plus = p, minus = p;
                    (axis == 0 ? plus.x : plus.y) += h;
                    (axis == 0 ? minus.x : minus.y) -= h;
                    const Eigen::Vector2d fd =
                        torus_displacement(map.apply(TorusPoint::wrapped(minus.x, minus.y)),
                                           map.apply(TorusPoint::wrapped(plus.x, plus.y))) /
                        (2.0 * h);
                    CHECK(std::fabs(fd.x() - d(0, axis)) < 1e-6);
                    CHECK(std::fabs(fd.y() - d(1, axis)) < 1e-6);
                }
            }
        }
    }

    SUBCASE("at a source the eigenvalues are (lambda_s e^a, lambda_u)") {
        const double expected_stable =
            map.model().stable_eigenvalue() * std::exp(map.params().bump_strength);
        const double expected_unstable = map.model().unstable_eigenvalue();
        for (const TorusPoint& s : map.params().sources) {
            Eigen::EigenSolver<Eigen::Matrix2d> eig(map.derivative(s));
            double lo = std::abs(eig.eigenvalues()(0));
            double hi = std::abs(eig.eigenvalues()(1));
            if (lo > hi) std::swap(lo, hi);
            CHECK(lo == doctest::Approx(expected_stable).epsilon(1e-9));
            CHECK(hi == doctest::Approx(expected_unstable).epsilon(1e-9));
            CHECK(lo > 1.0);
        }
    }
}

TEST_CASE("da inverse: roundtrip identity") {
    DaMap map = default_map();
    double worst = 0.0;
    for (int i = 0; i < 32; ++i) {
        for (int j = 0; j < 32; ++j) {
            const TorusPoint p{i / 32.0, j / 32.0};
            worst = std::max(worst, torus_distance(map.apply(map.apply_inverse(p)), p));
        }
    }
    CHECK(worst < 1e-9);

    // Points deep inside a bump disk as well.
    const TorusPoint source = map.params().sources[0];
    for (double r : {0.01, 0.05}) {
        const TorusPoint p = TorusPoint::wrapped(source.x + r, source.y + r / 3.0);
        CHECK(torus_distance(map.apply_inverse(map.apply(p)), p) < 1e-9);
    }
}

TEST_CASE("da params validation") {
    LinearModel model = default_model();
    auto fixed = fixed_points(model);
    DaParams params;
    params.sources = {fixed[0], fixed[1]};

    params.bump_radius = 0.3;  // disks of radius 0.3 overlap at separation 1/2
    params.bump_strength = 1.8;
    CHECK_THROWS_AS(DaMap(model, params), std::invalid_argument);

    params.bump_radius = 0.08;
    params.bump_strength = 0.5;  // stable eigenvalue stays below 1
    CHECK_THROWS_AS(DaMap(model, params), std::invalid_argument);

    params.bump_strength = 1.8;
    params.sources = {fixed[0], TorusPoint{0.25, 0.3}};  // not a fixed point
    CHECK_THROWS_AS(DaMap(model, params), std::invalid_argument);
}

TEST_CASE("da verification report on the default configuration") {
    Config cfg;
    // Trim the heavy sample counts for the unit suite; acceptance runs full.
    cfg.orbits.stable_samples = 20;
    cfg.orbits.ftle_samples = 10;
    DaMap map = default_map();
    const DaVerifyReport rep = run_da_verification(map, cfg);
    CHECK(rep.fixed_point_count == 2);
    CHECK(rep.fixed_point_max_move < 1e-12);
    CHECK(rep.source_eig_min_modulus > 1.0);
    CHECK(rep.source_singular_min > 1.0);
    CHECK(rep.derivative_fd_max_err < 1e-6);
    CHECK(rep.derivative_det_min > 0.0);
    CHECK(rep.inverse_roundtrip_max < 1e-9);
    CHECK(rep.stable_dir_max_err < 1e-6);
    CHECK(rep.ftle_middle_abs_max == 0.0);
    CHECK(rep.trapping_ok);
    CHECK(rep.pass);
}
