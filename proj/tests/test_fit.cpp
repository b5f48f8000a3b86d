#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <lrk/fit.hpp>

using namespace lrk;
using Catch::Approx;

TEST_CASE("linear fit recovers an exact line", "[fit]") {
    const std::vector<double> xs{1, 2, 3, 4, 5};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(3.0 * x + 2.0);
    const FitResult r = linear_fit(xs, ys);
    CHECK(r.slope == Approx(3.0).epsilon(1e-14));
    CHECK(r.intercept == Approx(2.0).epsilon(1e-14));
    CHECK(r.r_squared == Approx(1.0).margin(1e-14));
    CHECK(r.n_points == 5);
    CHECK(r.transform == FitTransform::Linear);
}

TEST_CASE("linear fit edge cases", "[fit]") {
    CHECK_THROWS_AS(linear_fit({1.0, 2.0}, {1.0}), domain_error);
    CHECK_THROWS_AS(linear_fit({1.0}, {2.0}), domain_error);
    CHECK_THROWS_AS(linear_fit({2.0, 2.0, 2.0}, {1.0, 2.0, 3.0}), domain_error);

    // constant y on varying x: perfect zero-slope fit
    const FitResult flat = linear_fit({1.0, 2.0, 3.0}, {4.0, 4.0, 4.0});
    CHECK(flat.slope == 0.0);
    CHECK(flat.r_squared == 1.0);

    // noisy data: r^2 strictly below 1
    const FitResult noisy = linear_fit({1, 2, 3, 4}, {1.0, 2.2, 2.7, 4.3});
    CHECK(noisy.r_squared < 1.0);
    CHECK(noisy.r_squared > 0.9);
}

TEST_CASE("power-law fit on log-log axes", "[fit]") {
    std::vector<double> xs{10, 20, 40, 80, 160};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(5.0 * std::pow(x, 2.5));
    const FitResult r = power_law_fit(xs, ys);
    CHECK(r.slope == Approx(2.5).epsilon(1e-13));
    CHECK(std::exp(r.intercept) == Approx(5.0).epsilon(1e-12));
    CHECK(r.r_squared == Approx(1.0).margin(1e-13));
    CHECK(r.transform == FitTransform::LogLog);

    CHECK_THROWS_AS(power_law_fit({-1.0, 2.0}, {1.0, 2.0}), domain_error);
    CHECK_THROWS_AS(power_law_fit({1.0, 2.0}, {0.0, 2.0}), domain_error);
}

TEST_CASE("exponential-decay fit on log-linear axes", "[fit]") {
    std::vector<double> xs{0, 1, 2, 3, 4};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(7.0 * std::exp(-1.3 * x));
    const FitResult r = exp_decay_fit(xs, ys);
    CHECK(r.slope == Approx(-1.3).epsilon(1e-13));
    CHECK(r.decay_rate() == Approx(1.3).epsilon(1e-13));
    CHECK(std::exp(r.intercept) == Approx(7.0).epsilon(1e-12));
    CHECK(r.r_squared == Approx(1.0).margin(1e-13));
    CHECK(r.transform == FitTransform::LogLinear);

    CHECK_THROWS_AS(exp_decay_fit({1.0, 2.0}, {1.0, -2.0}), domain_error);
}

TEST_CASE("transform names", "[fit]") {
    CHECK(to_string(FitTransform::Linear) == "linear");
    CHECK(to_string(FitTransform::LogLog) == "loglog");
    CHECK(to_string(FitTransform::LogLinear) == "loglinear");
}
