#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "metrology.hpp"
#include "model.hpp"
#include "optimize.hpp"
#include "parallel.hpp"
#include "qfi.hpp"
#include "quadrature.hpp"
#include "sweep.hpp"

// Critical sensing of mu when the hopping t is only known as a Gaussian
// ensemble N(t_bar, sigma_t^2): the figure of merit is the ensemble-averaged
// QFI F_bar(mu, t_bar, sigma) = integral p(t) F_mumu(mu, t) dt, its maximum
// over t_bar, the uncertainty threshold sigma_t^d at which that maximum stops
// tracking the exact-knowledge value, and the long-range advantage ratio r.

namespace lrk {

struct UncertainSpec {
    double t_bar = 1.0;
    double sigma_t = 0.0;
    QuadratureConfig quad;

    void validate() const {
        if (!(sigma_t >= 0.0))
            throw domain_error("sigma_t must be >= 0, got " + std::to_string(sigma_t));
        quad.validate();
    }
};

// sigma_t below this fraction of |t_bar| is treated as exact knowledge
inline constexpr double sigma_zero_rel = 1e-12;
inline constexpr int gauss_hermite_points = 257;

namespace detail {
inline const GaussHermiteRule& cached_gh_rule() {
    static const GaussHermiteRule rule = gauss_hermite_rule(gauss_hermite_points);
    return rule;
}
} // namespace detail

inline double averaged_qfi(double mu, const UncertainSpec& spec, const ModelParams& base,
                           const std::vector<double>& f_bare) {
    spec.validate();
    ModelParams p = base;
    p.mu = mu;
    if (spec.sigma_t < sigma_zero_rel * std::abs(spec.t_bar)) {
        // delta-distribution limit: exactly the fixed-t QFI
        p.t = spec.t_bar;
        return qfi_mu(p, f_bare);
    }

    if (spec.quad.method == QuadMethod::GaussHermite) {
        const auto& rule = detail::cached_gh_rule();
        const double scale = std::sqrt(2.0) * spec.sigma_t;
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            p.t = spec.t_bar + scale * rule.x[i];
            acc += rule.w[i] * qfi_mu(p, f_bare);
        }
        return acc / std::sqrt(pi);
    }

    const double a = spec.t_bar - spec.quad.span_sigmas * spec.sigma_t;
    const double b = spec.t_bar + spec.quad.span_sigmas * spec.sigma_t;
    const double norm = 1.0 / (spec.sigma_t * std::sqrt(2.0 * pi));
    auto integrand = [&](double t) {
        ModelParams q = p;
        q.t = t;
        const double z = (t - spec.t_bar) / spec.sigma_t;
        return norm * std::exp(-0.5 * z * z) * qfi_mu(q, f_bare);
    };
    // the fixed-t QFI is sharply peaked where the mode at k ~ pi goes
    // critical, i.e. near t = +-mu; force panel boundaries there
    std::vector<double> knots = spec.quad.forced_knots;
    knots.push_back(mu);
    knots.push_back(-mu);
    return adaptive_integrate(integrand, a, b, std::move(knots), spec.quad.rel_tol);
}

inline double averaged_qfi(double mu, const UncertainSpec& spec, const ModelParams& base) {
    base.validate();
    return averaged_qfi(mu, spec, base, pairing_table(base));
}

// (t_bar, sigma_t) surface of mu^2 * F_bar in lexicographic grid order.
// Each grid point is independent; workers only affect scheduling.
inline SweepTable uncertain_surface(double mu, const std::vector<double>& t_bar_grid,
                                    const std::vector<double>& sigma_grid,
                                    const ModelParams& base, const QuadratureConfig& quad = {},
                                    int workers = 1) {
    base.validate();
    auto check_grid = [](const std::vector<double>& g, const std::string& name) {
        if (g.empty()) throw domain_error("uncertain_surface: empty " + name + " grid");
        for (std::size_t i = 1; i < g.size(); ++i)
            if (!(g[i] > g[i - 1]))
                throw domain_error("uncertain_surface: " + name + " grid must be strictly increasing");
    };
    check_grid(t_bar_grid, "t_bar");
    check_grid(sigma_grid, "sigma_t");

    const auto f_bare = pairing_table(base);
    const std::size_t ns = sigma_grid.size();
    std::vector<double> values(t_bar_grid.size() * ns);
    parallel_for(values.size(), workers, [&](std::size_t idx) {
        UncertainSpec spec;
        spec.t_bar = t_bar_grid[idx / ns];
        spec.sigma_t = sigma_grid[idx % ns];
        spec.quad = quad;
        values[idx] = mu * mu * averaged_qfi(mu, spec, base, f_bare);
    });

    SweepTable tab;
    tab.labels = {"t_bar", "sigma_t", "f_bar"};
    for (std::size_t i = 0; i < t_bar_grid.size(); ++i)
        for (std::size_t j = 0; j < ns; ++j)
            tab.add_row({t_bar_grid[i], sigma_grid[j], values[i * ns + j]});
    return tab;
}

struct AveragedPeak {
    double t_bar_star = 0.0;
    double f_bar_max = 0.0;
};

inline constexpr int averaged_peak_coarse_points = 101;

// Maximal averaged QFI over t_bar at fixed mu and sigma_t: coarse scan plus
// golden-section refinement, mirroring the exact-knowledge peak search.
inline AveragedPeak max_averaged_qfi(double sigma_t, const ModelParams& base, double lo,
                                     double hi, const QuadratureConfig& quad,
                                     const std::vector<double>& f_bare) {
    auto f = [&](double tb) {
        UncertainSpec spec;
        spec.t_bar = tb;
        spec.sigma_t = sigma_t;
        spec.quad = quad;
        return averaged_qfi(base.mu, spec, base, f_bare);
    };
    const double xtol = 1e-6 * std::max(std::abs(base.mu), 1e-6);
    const MaxResult m = grid_then_golden(f, lo, hi, averaged_peak_coarse_points, xtol,
                                         "max_averaged_qfi");
    return {m.x, m.fx};
}

inline AveragedPeak max_averaged_qfi(double sigma_t, const ModelParams& base,
                                     double lo, double hi, const QuadratureConfig& quad = {}) {
    base.validate();
    return max_averaged_qfi(sigma_t, base, lo, hi, quad, pairing_table(base));
}

inline AveragedPeak max_averaged_qfi(double sigma_t, const ModelParams& base,
                                     const QuadratureConfig& quad = {}) {
    const double m = std::abs(base.mu);
    return max_averaged_qfi(sigma_t, base, default_window_lo * m, default_window_hi * m, quad);
}

struct ThresholdResult {
    double sigma_t_d = 0.0;  // smallest uncertainty width violating the criterion
    int L = 0;
    double alpha = 0.0;
    double delta_d = 0.0;
};

// sigma-range for the threshold bisection, in units of |mu|
inline constexpr double threshold_sigma_lo = 1e-7;
inline constexpr double threshold_sigma_hi = 1e-1;
inline constexpr int threshold_precheck_points = 13;

// Smallest sigma_t at which |1 - max[F_bar]/F^m| exceeds delta_d, where F^m is
// the exact-knowledge maximum for the same (L, alpha). The deviation is probed
// on a log grid first (the bisection assumes a single upward crossing; a
// non-monotone probe aborts with a diagnostic), then log-bisected to 2%
// relative width.
inline ThresholdResult deviation_threshold(int L, double alpha, double delta_d,
                                           const ModelParams& base,
                                           const QuadratureConfig& quad = {},
                                           double sigma_lo = threshold_sigma_lo,
                                           double sigma_hi = threshold_sigma_hi) {
    if (!(delta_d > 0.0 && delta_d < 1.0))
        throw domain_error("deviation_threshold: delta_d must lie in (0, 1), got " +
                           std::to_string(delta_d));
    if (!(sigma_lo > 0.0 && sigma_lo < sigma_hi))
        throw domain_error("deviation_threshold: invalid sigma range");

    ModelParams p = base.with_L(L).with_alpha(alpha);
    p.validate();
    const auto f_bare = pairing_table(p);

    // exact-knowledge reference: the single-parameter maximum over mu at t = base.t
    const double f_m =
        max_qfi(p, default_window_lo * p.t, default_window_hi * p.t, f_bare).f_max;
    const double mu_scale = std::abs(p.mu);
    const double w_lo = default_window_lo * mu_scale;
    const double w_hi = default_window_hi * mu_scale;

    auto dev = [&](double log_sigma) {
        const AveragedPeak pk =
            max_averaged_qfi(std::exp(log_sigma), p, w_lo, w_hi, quad, f_bare);
        return std::abs(1.0 - pk.f_bar_max / f_m);
    };

    const double lo = std::log(sigma_lo * mu_scale);
    const double hi = std::log(sigma_hi * mu_scale);
    std::vector<double> gs(threshold_precheck_points), dv(threshold_precheck_points);
    for (int i = 0; i < threshold_precheck_points; ++i) {
        gs[i] = lo + (hi - lo) * i / (threshold_precheck_points - 1);
        dv[i] = dev(gs[i]);
    }

    // monotone up to quadrature noise: the small-sigma plateau sits at the
    // |1 - max F_bar(0)/F^m| floor and jitters at the integration tolerance
    const double slack = std::max(1e-6, 1e-3 * delta_d);
    for (int i = 0; i + 1 < threshold_precheck_points; ++i)
        if (dv[i + 1] < dv[i] - slack)
            throw non_monotone_error(
                "deviation_threshold: deviation not monotone in sigma_t (" +
                std::to_string(dv[i]) + " -> " + std::to_string(dv[i + 1]) +
                " between sigma = " + std::to_string(std::exp(gs[i])) + " and " +
                std::to_string(std::exp(gs[i + 1])) + "); no single crossing to bisect");

    int idx = -1;
    for (int i = 0; i < threshold_precheck_points; ++i)
        if (dv[i] > delta_d) { idx = i; break; }
    if (idx < 0)
        throw threshold_range_error("deviation_threshold: deviation never exceeds " +
                                    std::to_string(delta_d) + " for sigma_t up to " +
                                    std::to_string(sigma_hi * mu_scale));
    if (idx == 0)
        throw threshold_degenerate_error(
            "deviation_threshold: deviation already exceeds " + std::to_string(delta_d) +
            " at the lower edge sigma_t = " + std::to_string(sigma_lo * mu_scale));

    double a = gs[idx - 1], b = gs[idx];
    const double width = std::log(1.02);  // 2% relative width in sigma_t
    while (b - a > width) {
        const double m = 0.5 * (a + b);
        if (dev(m) > delta_d)
            b = m;
        else
            a = m;
    }

    ThresholdResult r;
    r.sigma_t_d = std::exp(0.5 * (a + b));
    r.L = L;
    r.alpha = alpha;
    r.delta_d = delta_d;
    return r;
}

// Power-law exponents s(alpha) of sigma_t^d ~ L^{-s}: one threshold per
// (alpha, L), then a log-log fit over L.
inline SweepTable s_exponent_curve(const std::vector<double>& alpha_grid,
                                   const std::vector<int>& L_list, const ModelParams& base,
                                   double delta_d = 0.1, const QuadratureConfig& quad = {},
                                   int workers = 1) {
    if (alpha_grid.empty() || L_list.size() < 2)
        throw domain_error("s_exponent_curve: need at least one alpha and two L values");

    std::vector<double> thresholds(alpha_grid.size() * L_list.size());
    parallel_for(thresholds.size(), workers, [&](std::size_t idx) {
        const double a = alpha_grid[idx / L_list.size()];
        const int L = L_list[idx % L_list.size()];
        thresholds[idx] = deviation_threshold(L, a, delta_d, base, quad).sigma_t_d;
    });

    std::vector<double> Ld(L_list.begin(), L_list.end());
    SweepTable tab;
    tab.labels = {"alpha", "s"};
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
        std::vector<double> sd(thresholds.begin() + i * L_list.size(),
                               thresholds.begin() + (i + 1) * L_list.size());
        const FitResult fit = power_law_fit(Ld, sd);
        tab.add_row({alpha_grid[i], -fit.slope});
    }
    return tab;
}

// Uncertain long-range advantage r = max[F_bar](alpha) / max[F_bar](sin-k
// baseline), both maximized over their own t_bar window.
inline double uncertain_ratio(double alpha, double sigma_t, int L, const ModelParams& base,
                              const QuadratureConfig& quad = {}) {
    ModelParams p = base.with_L(L).with_alpha(alpha);
    p.validate();
    const double m = std::abs(p.mu);
    const double lo = default_window_lo * m, hi = default_window_hi * m;
    const AveragedPeak num = max_averaged_qfi(sigma_t, p, lo, hi, quad, pairing_table(p));
    const AveragedPeak den = max_averaged_qfi(sigma_t, p, lo, hi, quad, short_range_table(L));
    return num.f_bar_max / den.f_bar_max;
}

} // namespace lrk
