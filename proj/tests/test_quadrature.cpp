#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include <lrk/quadrature.hpp>

using namespace lrk;
using Catch::Approx;
using std::numbers::pi;

TEST_CASE("adaptive rule on smooth integrands", "[quadrature]") {
    const double third = adaptive_integrate([](double x) { return x * x; }, 0.0, 1.0, {}, 1e-10);
    CHECK(third == Approx(1.0 / 3.0).epsilon(1e-12));

    // full Gaussian mass over +-8 sigma
    const double norm = 1.0 / std::sqrt(2.0 * pi);
    const double one = adaptive_integrate(
        [&](double x) { return norm * std::exp(-0.5 * x * x); }, -8.0, 8.0, {}, 1e-9);
    CHECK(one == Approx(1.0).epsilon(1e-9));

    const double sine = adaptive_integrate([](double x) { return std::sin(x); }, 0.0, pi, {}, 1e-10);
    CHECK(sine == Approx(2.0).epsilon(1e-10));
}

TEST_CASE("forced knots capture kinks", "[quadrature]") {
    auto kink = [](double x) { return std::abs(x - 1.0); };
    const double with_knot = adaptive_integrate(kink, 0.0, 2.0, {1.0}, 1e-12);
    CHECK(with_knot == Approx(1.0).epsilon(1e-14));
    // knots outside the interval are ignored rather than rejected
    const double ignored = adaptive_integrate(kink, 0.0, 2.0, {-5.0, 7.0, 1.0, 1.0}, 1e-12);
    CHECK(ignored == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("tolerance drives accuracy", "[quadrature]") {
    auto peaked = [](double x) { return 1.0 / (1e-4 + x * x); };
    const double exact = 2.0 / 1e-2 * std::atan(1.0 / 1e-2);  // int_{-1}^{1}
    const double loose = adaptive_integrate(peaked, -1.0, 1.0, {0.0}, 1e-4);
    const double tight = adaptive_integrate(peaked, -1.0, 1.0, {0.0}, 1e-10);
    CHECK(tight == Approx(exact).epsilon(1e-10));
    CHECK(loose == Approx(exact).epsilon(1e-3));
    CHECK(std::abs(tight - exact) <= std::abs(loose - exact) + 1e-12);
}

TEST_CASE("panel exhaustion reports the achieved estimate", "[quadrature]") {
    auto peaked = [](double x) { return 1.0 / (1e-12 + x * x); };
    bool thrown = false;
    try {
        adaptive_integrate(peaked, -1.0, 1.0, {}, 1e-10, 8);
    } catch (const quadrature_error& e) {
        thrown = true;
        CHECK(e.estimate != 0.0);
        CHECK(e.error_bound > 0.0);
    }
    CHECK(thrown);

    CHECK_THROWS_AS(adaptive_integrate([](double) { return 1.0; }, 1.0, 1.0, {}, 1e-6),
                    domain_error);
}

TEST_CASE("Gauss-Hermite rule integrates polynomial moments exactly", "[quadrature]") {
    for (int n : {2, 7, 64, 257}) {
        const GaussHermiteRule rule = gauss_hermite_rule(n);
        REQUIRE(rule.x.size() == static_cast<std::size_t>(n));
        double m0 = 0.0, m2 = 0.0, modd = 0.0;
        for (int i = 0; i < n; ++i) {
            m0 += rule.w[i];
            m2 += rule.w[i] * rule.x[i] * rule.x[i];
            modd += rule.w[i] * rule.x[i];
        }
        const double sqrt_pi = std::sqrt(pi);
        INFO("n=" << n);
        CHECK(m0 == Approx(sqrt_pi).epsilon(1e-12));
        CHECK(m2 == Approx(0.5 * sqrt_pi).epsilon(1e-11));
        CHECK(modd == Approx(0.0).margin(1e-12));
        if (n >= 3) {
            double m4 = 0.0;
            for (int i = 0; i < n; ++i)
                m4 += rule.w[i] * std::pow(rule.x[i], 4);
            CHECK(m4 == Approx(0.75 * sqrt_pi).epsilon(1e-11));
        }
    }
    CHECK_THROWS_AS(gauss_hermite_rule(1), domain_error);
    CHECK_THROWS_AS(gauss_hermite_rule(321), domain_error);
}

TEST_CASE("Gauss-Hermite nodes are symmetric and ordered by construction", "[quadrature]") {
    const GaussHermiteRule rule = gauss_hermite_rule(31);
    for (int i = 0; i < 15; ++i) {
        CHECK(rule.x[i] == -rule.x[30 - i]);
        CHECK(rule.w[i] == rule.w[30 - i]);
        CHECK(rule.w[i] > 0.0);
    }
    CHECK(rule.x[15] == 0.0);
}

TEST_CASE("quadrature configuration validation", "[quadrature]") {
    QuadratureConfig q;
    CHECK_NOTHROW(q.validate());
    q.rel_tol = 1e-1;
    CHECK_THROWS_AS(q.validate(), domain_error);
    q.rel_tol = 1e-13;
    CHECK_THROWS_AS(q.validate(), domain_error);
    q.rel_tol = 1e-6;
    q.span_sigmas = 3.0;
    CHECK_THROWS_AS(q.validate(), domain_error);
    q.span_sigmas = 13.0;
    CHECK_THROWS_AS(q.validate(), domain_error);
}
