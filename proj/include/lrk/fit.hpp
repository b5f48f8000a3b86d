#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"

// Least-squares fits on transformed coordinates: plain linear, power law
// (log-log) and exponential decay (log-linear). Unweighted throughout; R^2 is
// the only goodness metric reported.

namespace lrk {

enum class FitTransform { Linear, LogLog, LogLinear };

inline std::string to_string(FitTransform t) {
    switch (t) {
        case FitTransform::Linear: return "linear";
        case FitTransform::LogLog: return "loglog";
        default: return "loglinear";
    }
}

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int n_points = 0;
    FitTransform transform = FitTransform::Linear;

    // convenience for exponential-decay fits y ~ e^{-q x}: q = -slope
    double decay_rate() const { return -slope; }
};

inline FitResult linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw domain_error("linear_fit: x and y lengths differ");
    const std::size_t n = xs.size();
    if (n < 2)
        throw domain_error("linear_fit: need at least 2 points, got " + std::to_string(n));

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) { mx += xs[i]; my += ys[i]; }
    mx /= n;
    my /= n;

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0)
        throw domain_error("linear_fit: all x values equal, slope undefined");

    FitResult r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    r.n_points = static_cast<int>(n);

    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = ys[i] - (r.slope * xs[i] + r.intercept);
        ss_res += e * e;
        ss_tot += (ys[i] - my) * (ys[i] - my);
    }
    r.r_squared = ss_tot == 0.0 ? (ss_res == 0.0 ? 1.0 : 0.0) : 1.0 - ss_res / ss_tot;
    return r;
}

// Fit y = a * x^p by regressing ln y on ln x; slope is the exponent p.
inline FitResult power_law_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<double> lx(xs.size()), ly(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0))
            throw domain_error("power_law_fit: x values must be positive");
        lx[i] = std::log(xs[i]);
    }
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (!(ys[i] > 0.0))
            throw domain_error("power_law_fit: y values must be positive");
        ly[i] = std::log(ys[i]);
    }
    FitResult r = linear_fit(lx, ly);
    r.transform = FitTransform::LogLog;
    return r;
}

// Fit y = a * e^{slope * x} by regressing ln y on x; decay_rate() = -slope.
inline FitResult exp_decay_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<double> ly(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (!(ys[i] > 0.0))
            throw domain_error("exp_decay_fit: y values must be positive");
        ly[i] = std::log(ys[i]);
    }
    FitResult r = linear_fit(xs, ly);
    r.transform = FitTransform::LogLinear;
    return r;
}

} // namespace lrk
