#pragma once

#include <stdexcept>
#include <string>

namespace lrk {

// Invalid arguments / configuration. CLI maps these to exit code 2.
struct domain_error : std::invalid_argument {
    explicit domain_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Numerical failures during an otherwise valid computation. CLI maps these to
// exit code 1 and records them in the run manifest.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A mode with vanishing quasiparticle energy: the Bogoliubov angle derivative
// blows up, so QFI evaluation refuses to continue.
struct singular_mode_error : numeric_error {
    double k;
    explicit singular_mode_error(double k_, const std::string& msg)
        : numeric_error(msg), k(k_) {}
};

// Adaptive quadrature ran out of subdivisions. Carries the best estimate and
// the achieved error bound so callers can report how far off they were.
struct quadrature_error : numeric_error {
    double estimate;
    double error_bound;
    quadrature_error(double est, double bound, const std::string& msg)
        : numeric_error(msg), estimate(est), error_bound(bound) {}
};

// Grid-scan maximization found the best point on the window edge, i.e. the
// window does not bracket the peak.
struct boundary_peak_error : numeric_error {
    explicit boundary_peak_error(const std::string& msg) : numeric_error(msg) {}
};

// Deviation-threshold bisection failures.
struct threshold_range_error : numeric_error {        // criterion never met in range
    explicit threshold_range_error(const std::string& msg) : numeric_error(msg) {}
};
struct threshold_degenerate_error : numeric_error {   // already met at the lower edge
    explicit threshold_degenerate_error(const std::string& msg) : numeric_error(msg) {}
};
struct non_monotone_error : numeric_error {           // deviation curve not single-crossing
    explicit non_monotone_error(const std::string& msg) : numeric_error(msg) {}
};

} // namespace lrk
