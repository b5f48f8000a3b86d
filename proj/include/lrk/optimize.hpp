#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"

// One-dimensional maximization: a coarse grid scan brackets the peak, then
// golden-section search refines it. The refined value is never allowed to
// fall below the best coarse sample.

namespace lrk {

struct MaxResult {
    double x = 0.0;
    double fx = 0.0;
    double lo = 0.0, hi = 0.0;  // bracket handed to the refinement stage
    bool refined = false;
};

// Golden-section search for the maximum of f on [lo, hi]; assumes unimodality
// within the bracket. Stops when the bracket is narrower than xtol.
template <typename F>
MaxResult golden_section_max(F&& f, double lo, double hi, double xtol) {
    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc > fd) {
            b = d;
            d = c; fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d; fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    MaxResult r;
    r.lo = lo; r.hi = hi;
    r.x = 0.5 * (a + b);
    r.fx = f(r.x);
    r.refined = true;
    return r;
}

// Scan npts equidistant samples of f over [lo, hi]; if the best sample sits on
// the window edge the peak is not bracketed and we refuse to refine. Otherwise
// golden-section runs on the two neighbouring cells.
template <typename F>
MaxResult grid_then_golden(F&& f, double lo, double hi, int npts, double xtol,
                           const std::string& what) {
    if (!(lo < hi))
        throw domain_error(what + ": window is empty (" + std::to_string(lo) + ", " +
                           std::to_string(hi) + ")");
    if (npts < 3)
        throw domain_error(what + ": grid needs at least 3 points");

    std::vector<double> xs(npts), vals(npts);
    const double h = (hi - lo) / (npts - 1);
    int best = 0;
    for (int i = 0; i < npts; ++i) {
        xs[i] = lo + h * i;
        vals[i] = f(xs[i]);
        if (vals[i] > vals[best]) best = i;
    }
    if (best == 0 || best == npts - 1)
        throw boundary_peak_error(what + ": maximum at window edge x = " +
                                  std::to_string(xs[best]) + "; enlarge the window");

    MaxResult r = golden_section_max(f, xs[best - 1], xs[best + 1], xtol);
    if (vals[best] > r.fx) {  // refinement must not lose the coarse maximum
        r.x = xs[best];
        r.fx = vals[best];
    }
    return r;
}

} // namespace lrk
