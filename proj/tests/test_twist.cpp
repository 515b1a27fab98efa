#include <doctest.h>

#include <cmath>

#include "phlab/numerics.hpp"
#include "phlab/twist.hpp"

using namespace phlab;

TEST_CASE("twist profile") {
    TwistProfile rho;
    SUBCASE("endpoint normalization and the symmetric midpoint") {
        CHECK(rho.rho(0.0) == 0.0);
        CHECK(rho.rho(1.0) == 1.0);
        CHECK(rho.rho(0.5) == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("flat near both ends") {
        for (double t : {0.0, 0.05, 0.1}) {
            CHECK(rho.rho(t) == 0.0);
            CHECK(rho.rho_prime(t) == 0.0);
        }
        for (double t : {0.9, 0.96, 1.0}) {
            CHECK(rho.rho(t) == 1.0);
            CHECK(rho.rho_prime(t) == 0.0);
        }
    }
    SUBCASE("derivative matches finite differences") {
        const double h = 1e-6;
        for (double t = 0.02; t < 0.99; t += 0.017) {
            const double fd = (rho.rho(t + h) - rho.rho(t - h)) / (2.0 * h);
            CHECK(std::fabs(fd - rho.rho_prime(t)) < 1e-8);
        }
    }
    SUBCASE("monotone, with the stated derivative bound") {
        CHECK(rho.max_rho_prime() == doctest::Approx(2.34375).epsilon(1e-15));
        double sup = 0.0;
        for (double t = 0.0; t <= 1.0; t += 1e-4) {
            CHECK(rho.rho_prime(t) >= 0.0);
            sup = std::max(sup, rho.rho_prime(t));
        }
        CHECK(sup <= rho.max_rho_prime() + 1e-15);
        CHECK(rho.rho_prime(0.5) == doctest::Approx(rho.max_rho_prime()));
    }
    SUBCASE("domain checks and constructor validation") {
        CHECK_THROWS_AS(rho.rho(-0.01), std::domain_error);
        CHECK_THROWS_AS(rho.rho_prime(1.01), std::domain_error);
        CHECK_THROWS_AS(TwistProfile(0.9, 0.1), std::invalid_argument);
        CHECK_THROWS_AS(TwistProfile(0.0, 0.9), std::invalid_argument);
    }
    SUBCASE("disabled profile is identically zero") {
        TwistProfile off = TwistProfile::disabled();
        CHECK_FALSE(off.enabled());
        CHECK(off.rho(0.7) == 0.0);
        CHECK(off.rho_prime(0.5) == 0.0);
        CHECK(off.max_rho_prime() == 0.0);
    }
}

TEST_CASE("shear map") {
    TwistProfile rho;
    SUBCASE("identity below the support") {
        const ModelPoint p{0.05, 0.3, 0.7};
        const ModelPoint q = g_apply(rho, p);
        CHECK(q.t == p.t);
        CHECK(q.x == p.x);
        CHECK(q.y == p.y);
    }
    SUBCASE("the full twist closes up on the torus") {
        const ModelPoint q = g_apply(rho, {1.0, 0.4, 0.8});
        CHECK(q.y == doctest::Approx(0.8).epsilon(1e-14));
    }
    SUBCASE("exact inverse and unit determinant on random points") {
        SplitMix64 rng(7);
        for (int i = 0; i < 1000; ++i) {
            const ModelPoint p{rng.next_double(), rng.next_double(), rng.next_double()};
            const ModelPoint q = g_inverse(rho, g_apply(rho, p));
            CHECK(std::fabs(q.t - p.t) < 1e-12);
            CHECK(std::fabs(wrap_signed(q.x - p.x)) < 1e-12);
            CHECK(std::fabs(wrap_signed(q.y - p.y)) < 1e-12);
            CHECK(g_derivative(rho, p).determinant() == doctest::Approx(1.0).epsilon(1e-15));
        }
    }
    SUBCASE("derivative is the shear with rho'(t) in the (y, t) slot") {
        const ModelPoint p{0.5, 0.2, 0.9};
        const Eigen::Matrix3d d = g_derivative(rho, p);
        Eigen::Matrix3d expected = Eigen::Matrix3d::Identity();
        expected(2, 0) = rho.rho_prime(0.5);
        CHECK((d - expected).norm() == 0.0);
    }
    SUBCASE("commutes with y-translation") {
        for (double t : {0.3, 0.55, 0.77}) {
            const double c = 0.37;
            const ModelPoint a = g_apply(rho, {t, 0.2, 0.5});
            const ModelPoint b = g_apply(rho, {t, 0.2, wrap_unit(0.5 + c)});
            CHECK(std::fabs(wrap_signed(b.y - a.y - c)) < 1e-14);
        }
    }
}

TEST_CASE("rescaling map") {
    const TorusPoint p{0.3, 0.6};
    SUBCASE("endpoints") {
        const ModelPoint a = h_n(0.0, p, 25.0);
        CHECK(a.t == 0.0);
        CHECK(a.x == p.x);
        const ModelPoint b = h_n(25.0, p, 25.0);
        CHECK(b.t == 1.0);
    }
    SUBCASE("compresses the flow coordinate by 1/N") {
        const double n = 40.0;
        const double delta = 1e-6;
        const ModelPoint a = h_n(10.0, p, n);
        const ModelPoint b = h_n(10.0 + delta, p, n);
        CHECK((b.t - a.t) / delta == doctest::Approx(1.0 / n).epsilon(1e-9));
        CHECK(b.x == a.x);
        CHECK(b.y == a.y);
    }
    SUBCASE("round trip") {
        const ModelPoint mp = h_n(17.3, p, 40.0);
        const auto [t_abs, q] = h_n_inverse(mp, 40.0);
        CHECK(t_abs == doctest::Approx(17.3).epsilon(1e-14));
        CHECK(torus_distance(q, p) == 0.0);
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(h_n(-1.0, p, 10.0), std::domain_error);
        CHECK_THROWS_AS(h_n(11.0, p, 10.0), std::domain_error);
        CHECK_THROWS_AS(h_n(1.0, p, 0.0), std::domain_error);
    }
}

TEST_CASE("pushforwards by the shear") {
    TwistProfile rho;
    SUBCASE("lines below the support are unchanged") {
        const LineField3 line = LineField3::along({0.3, 0.5, 0.2});
        const LineField3 pushed = pushforward_line(rho, line, {0.05, 0.1, 0.1});
        CHECK((pushed.dir - line.dir).norm() < 1e-15);
    }
    SUBCASE("the flow line tilts by rho'") {
        const double t = 0.5;
        const double r = rho.rho_prime(t);
        const LineField3 pushed =
            pushforward_line(rho, LineField3::along(Eigen::Vector3d::UnitX()),
                             {t, 0.3, 0.9});
        const Eigen::Vector3d expected = Eigen::Vector3d(1.0, 0.0, r).normalized();
        CHECK((pushed.dir - expected).norm() < 1e-14);
    }
    SUBCASE("vertical lines stay vertical") {
        const LineField3 vertical = LineField3::along({0.0, 0.6, 0.8});
        const LineField3 pushed = pushforward_line(rho, vertical, {0.5, 0.3, 0.9});
        CHECK(std::fabs(pushed.dir.x()) == 0.0);
    }
    SUBCASE("plane normal stays orthogonal to the pushed spans") {
        const PlaneField3 plane = PlaneField3::spanned_by(
            Eigen::Vector3d::UnitX(), Eigen::Vector3d(0.0, 0.8, 0.6));
        const PlaneField3 pushed = pushforward_plane(rho, plane, {0.45, 0.2, 0.2});
        CHECK(std::fabs(pushed.normal.dot(pushed.span_a)) < 1e-12);
        CHECK(std::fabs(pushed.normal.dot(pushed.span_b)) < 1e-12);
        CHECK(pushed.normal.norm() == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("degenerate spans are rejected") {
        CHECK_THROWS_AS(PlaneField3::spanned_by(Eigen::Vector3d::UnitX(),
                                                Eigen::Vector3d::UnitX()),
                        std::invalid_argument);
    }
}
