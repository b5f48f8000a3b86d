#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fit.hpp"
#include "model.hpp"
#include "optimize.hpp"
#include "qfi.hpp"
#include "sweep.hpp"

// Single-parameter critical sensing: QFI sweeps over mu, the maximal QFI
// F^m and its finite-size scaling, and the long-range / short-range advantage
// ratio R = F^m(alpha) / F^m(sin-k baseline).

namespace lrk {

struct PeakResult {
    double mu_star = 0.0;   // argmax location
    double f_max = 0.0;     // maximal QFI
    double lo = 0.0, hi = 0.0;
    bool refined = false;
};

// Default peak-search window in units of t: the critical point sits at
// |mu| = t, and the QFI peak stays within a few percent of it at finite L.
inline constexpr double default_window_lo = 0.8;
inline constexpr double default_window_hi = 1.2;
inline constexpr int peak_coarse_points = 201;

inline SweepTable qfi_sweep(const ModelParams& base, const std::vector<double>& mu_grid,
                            const std::vector<double>& f_bare) {
    if (mu_grid.empty())
        throw domain_error("qfi_sweep: empty mu grid");
    for (std::size_t i = 1; i < mu_grid.size(); ++i)
        if (!(mu_grid[i] > mu_grid[i - 1]))
            throw domain_error("qfi_sweep: mu grid must be strictly increasing");
    SweepTable tab;
    tab.labels = {"mu", "f_mumu"};
    for (double m : mu_grid) {
        try {
            tab.add_row({m, qfi_mu(base.with_mu(m), f_bare)});
        } catch (const singular_mode_error& e) {
            throw singular_mode_error(e.k, std::string(e.what()) + " (at mu = " +
                                               std::to_string(m) + ")");
        }
    }
    return tab;
}

inline SweepTable qfi_sweep(const ModelParams& base, const std::vector<double>& mu_grid) {
    base.validate();
    return qfi_sweep(base, mu_grid, pairing_table(base));
}

namespace detail {
inline PeakResult peak_from(const MaxResult& m) {
    PeakResult p;
    p.mu_star = m.x;
    p.f_max = m.fx;
    p.lo = m.lo;
    p.hi = m.hi;
    p.refined = m.refined;
    return p;
}
} // namespace detail

// Maximal QFI over mu in [lo, hi]: 201-point coarse scan, golden-section
// refinement to 1e-6 * t.
inline PeakResult max_qfi(const ModelParams& base, double lo, double hi,
                          const std::vector<double>& f_bare) {
    auto f = [&](double m) { return qfi_mu(base.with_mu(m), f_bare); };
    const double xtol = 1e-6 * std::abs(base.t);
    return detail::peak_from(grid_then_golden(f, lo, hi, peak_coarse_points, xtol, "max_qfi"));
}

inline PeakResult max_qfi(const ModelParams& base, double lo, double hi) {
    base.validate();
    return max_qfi(base, lo, hi, pairing_table(base));
}

inline PeakResult max_qfi(const ModelParams& base) {
    return max_qfi(base, default_window_lo * base.t, default_window_hi * base.t);
}

// Same pipeline with the pairing sum replaced by its alpha -> infinity limit
// sin k (the short-range baseline).
inline PeakResult short_range_max_qfi(int L, const ModelParams& base, double lo, double hi) {
    ModelParams p = base.with_L(L);
    p.validate();
    return max_qfi(p, lo, hi, short_range_table(L));
}

inline PeakResult short_range_max_qfi(int L, const ModelParams& base) {
    return short_range_max_qfi(L, base, default_window_lo * base.t, default_window_hi * base.t);
}

// F^m as a function of system size, one max_qfi search per L.
inline SweepTable scaling_curve(double alpha, const std::vector<int>& L_list,
                                const ModelParams& base) {
    if (L_list.empty())
        throw domain_error("scaling_curve: empty L list");
    for (std::size_t i = 1; i < L_list.size(); ++i)
        if (L_list[i] <= L_list[i - 1])
            throw domain_error("scaling_curve: L list must be strictly increasing");
    SweepTable tab;
    tab.labels = {"L", "f_max", "mu_star"};
    for (int L : L_list) {
        const PeakResult p = max_qfi(base.with_L(L).with_alpha(alpha));
        tab.add_row({static_cast<double>(L), p.f_max, p.mu_star});
    }
    return tab;
}

// Long-range advantage R = F^m(alpha) / F^m(short-range), each maximized
// independently over its own mu window.
inline double ratio_Rm(double alpha, int L, const ModelParams& base) {
    const PeakResult lr = max_qfi(base.with_L(L).with_alpha(alpha));
    const PeakResult sr = short_range_max_qfi(L, base);
    return lr.f_max / sr.f_max;
}

// Single-parameter quantum Cramer-Rao bound: the standard deviation of any
// unbiased estimate is at least 1 / sqrt(N F).
inline double cramer_rao_bound(double f, long n_measurements) {
    if (!(f > 0.0))
        throw domain_error("cramer_rao_bound: QFI must be positive, got " + std::to_string(f));
    if (n_measurements <= 0)
        throw domain_error("cramer_rao_bound: need a positive number of measurements");
    return 1.0 / std::sqrt(static_cast<double>(n_measurements) * f);
}

} // namespace lrk
