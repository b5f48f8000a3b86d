#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"

// Numerical integration used by the Gaussian-averaged QFI: an adaptive
// Gauss-Kronrod (7-15) scheme with caller-supplied split points for sharp
// integrand features, plus a Gauss-Hermite rule kept as an independent
// cross-check for Gaussian weights.

namespace lrk {

enum class QuadMethod { AdaptiveGK, GaussHermite };

struct QuadratureConfig {
    QuadMethod method = QuadMethod::AdaptiveGK;
    double rel_tol = 1e-6;
    double span_sigmas = 8.0;           // half-width of the integration window
    std::vector<double> forced_knots;   // extra subdivision points

    void validate() const {
        if (!(rel_tol > 1e-12 && rel_tol < 1e-2))
            throw domain_error("quadrature rel_tol must lie in (1e-12, 1e-2), got " +
                               std::to_string(rel_tol));
        if (!(span_sigmas >= 4.0 && span_sigmas <= 12.0))
            throw domain_error("quadrature span_sigmas must lie in [4, 12], got " +
                               std::to_string(span_sigmas));
    }
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (nonnegative nodes).
inline constexpr double gk_x[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double value = 0.0;
    double error = 0.0;
};

// One Gauss-Kronrod panel on [a, b] with the usual sharpened error estimate:
// the raw |K15 - G7| difference is damped through the (200 d)^{3/2} rule
// against the centered absolute integral.
template <typename F>
PanelResult gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double fv[15];
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(c - h * gk_x[j]);
        fv[14 - j] = f(c + h * gk_x[j]);
    }
    fv[7] = f(c);

    double resk = 0.0, resg = 0.0, resabs = 0.0;
    for (int j = 0; j < 7; ++j) {
        resk += gk_wk[j] * (fv[j] + fv[14 - j]);
        resabs += gk_wk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    }
    resk += gk_wk[7] * fv[7];
    resabs += gk_wk[7] * std::abs(fv[7]);
    for (int j = 0; j < 3; ++j)
        resg += gk_wg[j] * (fv[2 * j + 1] + fv[13 - 2 * j]);
    resg += gk_wg[3] * fv[7];

    const double mean = 0.5 * resk;
    double resasc = gk_wk[7] * std::abs(fv[7] - mean);
    for (int j = 0; j < 7; ++j)
        resasc += gk_wk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));

    PanelResult r;
    r.value = resk * h;
    double err = std::abs((resk - resg) * h);
    const double asc = resasc * std::abs(h);
    if (asc != 0.0 && err != 0.0)
        err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    const double round_floor =
        50.0 * std::numeric_limits<double>::epsilon() * resabs * std::abs(h);
    r.error = std::max(err, round_floor);
    return r;
}

} // namespace detail

// Adaptive integration of f over [a, b]. The interval is pre-split at the
// given knots (sharp integrand features the bisection would otherwise have to
// discover), then the worst panel is halved until the summed error estimate
// drops below rel_tol * |integral|. Panel selection breaks ties toward the
// leftmost panel, so refinement order is deterministic.
template <typename F>
double adaptive_integrate(F&& f, double a, double b, std::vector<double> knots,
                          double rel_tol, int max_panels = 4000) {
    if (!(a < b))
        throw domain_error("adaptive_integrate: empty interval");

    knots.erase(std::remove_if(knots.begin(), knots.end(),
                               [&](double x) { return !(x > a && x < b); }),
                knots.end());
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    struct Panel {
        double a, b, value, error;
    };
    std::vector<Panel> panels;
    panels.reserve(64);
    double lo = a;
    for (std::size_t i = 0; i <= knots.size(); ++i) {
        const double hi = i < knots.size() ? knots[i] : b;
        const auto r = detail::gk15(f, lo, hi);
        panels.push_back({lo, hi, r.value, r.error});
        lo = hi;
    }

    auto totals = [&] {
        double v = 0.0, e = 0.0;
        for (const auto& p : panels) { v += p.value; e += p.error; }
        return std::pair<double, double>(v, e);
    };

    auto [total, err] = totals();
    while (err > rel_tol * std::abs(total) && err > 1e-300) {
        if (static_cast<int>(panels.size()) >= max_panels)
            throw quadrature_error(total, err,
                                   "adaptive_integrate: no convergence after " +
                                       std::to_string(max_panels) + " panels (estimate " +
                                       std::to_string(total) + ", bound " +
                                       std::to_string(err) + ")");
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].error > panels[worst].error) worst = i;

        const Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        const auto left = detail::gk15(f, p.a, mid);
        const auto right = detail::gk15(f, mid, p.b);
        panels[worst] = {p.a, mid, left.value, left.error};
        panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1,
                      {mid, p.b, right.value, right.error});
        std::tie(total, err) = totals();
    }
    return total;
}

// Gauss-Hermite rule for integral f(x) e^{-x^2} dx: nodes are the roots of
// the order-n Hermite polynomial (Newton refinement from the classic initial
// guesses), weights via the Christoffel sum over the orthonormal family.
struct GaussHermiteRule {
    std::vector<double> x;
    std::vector<double> w;
};

inline GaussHermiteRule gauss_hermite_rule(int n) {
    // the orthonormal polynomial values carry e^{x^2/2} growth; n beyond ~320
    // would overflow doubles near the extreme roots
    if (n < 2 || n > 320)
        throw domain_error("gauss_hermite_rule: order must lie in [2, 320], got " +
                           std::to_string(n));

    // orthonormal recurrence w.r.t. e^{-x^2}: p0 = pi^{-1/4},
    // p_{j+1} = x sqrt(2/(j+1)) p_j - sqrt(j/(j+1)) p_{j-1}
    auto eval = [n](double xx, double& pn, double& pn1) {
        double pm = 0.0;
        double p = std::pow(std::numbers::pi, -0.25);
        for (int j = 0; j < n; ++j) {
            const double pnew =
                xx * std::sqrt(2.0 / (j + 1)) * p - std::sqrt(static_cast<double>(j) / (j + 1)) * pm;
            pm = p;
            p = pnew;
        }
        pn = p;
        pn1 = pm;
    };

    // All roots lie inside |x| < R = sqrt(2n+1), and the bulk spacing
    // pi / R near the origin is the tightest anywhere, so scanning the sign
    // of p_n at a quarter of that spacing cannot straddle two roots.
    // Extrapolation-seeded Newton (the textbook route) starts skipping roots
    // around n ~ 150, which is why the brackets are found exhaustively here.
    const double R = std::sqrt(2.0 * n + 1.0);
    const double step = 0.25 * std::numbers::pi / R;
    const int m = n / 2;  // count of strictly positive roots

    auto refine = [&](double lo, double hi, bool lo_negative) {
        double pn, pn1;
        for (int it = 0; it < 12; ++it) {  // bisect first; Newton then cannot escape
            const double mid = 0.5 * (lo + hi);
            eval(mid, pn, pn1);
            ((pn < 0.0) == lo_negative ? lo : hi) = mid;
        }
        double z = 0.5 * (lo + hi);
        for (int it = 0; it < 60; ++it) {
            eval(z, pn, pn1);
            const double dz = pn / (std::sqrt(2.0 * n) * pn1);  // p_n' = sqrt(2n) p_{n-1}
            const double next = z - dz;
            z = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
            if (std::abs(dz) < 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        return z;
    };

    std::vector<double> zs;  // ascending positive roots
    zs.reserve(m);
    double x_prev = 1e-12 * R;  // just past the exact root at 0 for odd n
    double pn, pn1;
    eval(x_prev, pn, pn1);
    bool prev_negative = pn < 0.0;
    for (double x = step; static_cast<int>(zs.size()) < m && x < R + step; x += step) {
        eval(x, pn, pn1);
        const bool negative = pn < 0.0;
        if (negative != prev_negative) zs.push_back(refine(x_prev, x, prev_negative));
        x_prev = x;
        prev_negative = negative;
    }
    if (static_cast<int>(zs.size()) != m)
        throw numeric_error("gauss_hermite_rule: sign scan found " +
                            std::to_string(zs.size()) + " of " + std::to_string(m) +
                            " positive roots");

    // Christoffel weight: 1 / sum_{k<n} p_k(z)^2
    auto christoffel = [&](double z) {
        double pm = 0.0;
        double p = std::pow(std::numbers::pi, -0.25);
        double s = p * p;
        for (int j = 0; j + 1 < n; ++j) {
            const double pnew =
                z * std::sqrt(2.0 / (j + 1)) * p - std::sqrt(static_cast<double>(j) / (j + 1)) * pm;
            pm = p;
            p = pnew;
            s += p * p;
        }
        return 1.0 / s;
    };

    GaussHermiteRule rule;
    rule.x.assign(n, 0.0);
    rule.w.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        const double z = zs[m - 1 - i];  // descending positive roots first
        const double w = christoffel(z);
        rule.x[i] = z;
        rule.x[n - 1 - i] = -z;  // mirrored negatives
        rule.w[i] = w;
        rule.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) {  // exact center for odd orders
        rule.x[half - 1] = 0.0;
        rule.w[half - 1] = christoffel(0.0);
    }
    return rule;
}

} // namespace lrk
