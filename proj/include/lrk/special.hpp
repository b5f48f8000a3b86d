#pragma once

#include <array>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "model.hpp"

// Special functions and the near-critical expansion of the pairing sum.
// zeta is evaluated through the alternating (Dirichlet eta) series with
// Borwein's Chebyshev acceleration: ~1e-15 accuracy for real s > 0 at fixed
// order, no adaptive machinery.

namespace lrk {

namespace detail {

inline constexpr int borwein_order = 50;

// Borwein coefficients d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!),
// built once via the stable ratio recurrence (d_n ~ 1.6e38 fits in double).
inline const std::array<double, borwein_order + 1>& borwein_d() {
    static const std::array<double, borwein_order + 1> d = [] {
        std::array<double, borwein_order + 1> out{};
        const int n = borwein_order;
        double t = 1.0 / n;  // i = 0 term
        double acc = t;
        out[0] = n * acc;
        for (int i = 0; i < n; ++i) {
            t *= 4.0 * (n + i) * (n - i) / ((2.0 * i + 2.0) * (2.0 * i + 1.0));
            acc += t;
            if (i + 1 <= n) out[i + 1] = n * acc;
        }
        return out;
    }();
    return d;
}

} // namespace detail

// Dirichlet eta(s) = sum (-1)^{k+1} / k^s, accelerated; valid for s > 0.
inline double dirichlet_eta(double s) {
    if (!(s > 0.0))
        throw domain_error("dirichlet_eta: s must be > 0, got " + std::to_string(s));
    const auto& d = detail::borwein_d();
    const int n = detail::borwein_order;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 0; k < n; ++k) {
        sum += sign * (d[k] - d[n]) * std::pow(k + 1.0, -s);
        sign = -sign;
    }
    return -sum / d[n];
}

// Riemann zeta on the real axis, s > 0, away from the pole at s = 1.
inline double zeta(double s) {
    if (!(s > 0.0))
        throw domain_error("zeta: s must be > 0, got " + std::to_string(s));
    if (std::abs(s - 1.0) <= 1e-6)
        throw domain_error("zeta: s too close to the pole at 1, got " + std::to_string(s));
    return dirichlet_eta(s) / (1.0 - std::pow(2.0, 1.0 - s));
}

// Leading coefficient of f_alpha(k) ~ c_alpha * (pi - k) near the zone edge.
//
// On the antiperiodic grid the exact sum at k = pi - x obeys
//   f(k) = sum_y (-1)^{y+1} sin(x y) / y^alpha -> x * eta(alpha - 1) + O(x^3),
// so c_alpha = (1 - 2^{2-alpha}) zeta(alpha - 1). (A published variant carries
// an extra 1/zeta(alpha) normalization; that version disagrees with the grid
// sum by up to ~60% for small alpha and is not used here.)
//
// At alpha = 2 the coefficient picks up a logarithm; `value` then stores the
// prefactor 6/pi^2 of the bracketed form used by pairing_expansion.
struct ExpansionCoefficient {
    double alpha = 0.0;
    double value = 0.0;
    bool is_log_corrected = false;
};

inline constexpr double log_corrected_halfwidth = 1e-3;  // |alpha - 2| window

inline ExpansionCoefficient expansion_coefficient(double alpha) {
    if (!(alpha > 1.0))
        throw domain_error("expansion_coefficient: alpha must be > 1, got " +
                           std::to_string(alpha));
    ExpansionCoefficient c;
    c.alpha = alpha;
    if (std::abs(alpha - 2.0) <= log_corrected_halfwidth) {
        c.is_log_corrected = true;
        c.value = 6.0 / (pi * pi);
        return c;
    }
    // zeta(alpha - 1) diverges as alpha -> 2; the window above keeps us out
    c.value = (1.0 - std::pow(2.0, 2.0 - alpha)) * zeta(alpha - 1.0);
    return c;
}

// Near-edge approximation of the pairing sum for k close to pi:
//   alpha != 2:  c_alpha * (pi - k)
//   alpha  = 2:  (6/pi^2) [2 ln 2 - 1 - ln(pi - k)] (pi - k)
inline double pairing_expansion(double k, double alpha) {
    const double x = pi - k;
    if (!(x > 0.0 && x < 0.5))
        throw domain_error("pairing_expansion: need pi - k in (0, 0.5), got pi - k = " +
                           std::to_string(x));
    const ExpansionCoefficient c = expansion_coefficient(alpha);
    if (c.is_log_corrected)
        return c.value * (2.0 * std::log(2.0) - 1.0 - std::log(x)) * x;
    return c.value * x;
}

// The L^2 growth law of the maximal QFI, with unit prefactor: the peak is
// dominated by the k = pi - pi/L mode, giving F^m ~ 1/(pi - k_max)^2 = L^2/pi^2.
// Used only for exponent checks, never for absolute comparisons.
inline double predicted_max_qfi(int L, double /*alpha*/) {
    if (L < 4 || L % 2 != 0)
        throw domain_error("predicted_max_qfi: L must be an even integer >= 4, got " +
                           std::to_string(L));
    return static_cast<double>(L) * L / (pi * pi);
}

} // namespace lrk
