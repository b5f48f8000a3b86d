#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"

// Momentum-space construction of the long-range Kitaev chain with power-law
// pairing. Everything downstream (dispersion, Bogoliubov angles, QFI) is built
// from the per-mode data assembled here.

namespace lrk {

inline constexpr double pi = std::numbers::pi;

// Distance rule for the pairing sum f_alpha(k) = sum_y sin(k y) / d_y^alpha.
//   Open: d_y = y            (reproduces the sin-k short-range limit)
//   Ring: d_y = min(y, L-y)  (chord distance; short-range limit is 2 sin k)
// Open is the default; Ring is kept for sensitivity checks.
enum class Convention { Open, Ring };

inline std::string to_string(Convention c) {
    return c == Convention::Open ? "open" : "ring";
}

struct ModelParams {
    int L = 100;             // site count, even, >= 4
    double t = 1.0;          // hopping
    double mu = 1.0;         // chemical potential
    double delta = 1.0;      // pairing strength (multiplies the pairing sum)
    double alpha = 2.0;      // power-law decay exponent, > 1
    Convention convention = Convention::Open;

    void validate() const {
        if (L < 4 || L % 2 != 0)
            throw domain_error("L must be an even integer >= 4, got " + std::to_string(L));
        if (!(alpha > 1.0))
            throw domain_error("alpha must be > 1, got " + std::to_string(alpha));
        if (!(delta > 0.0))
            throw domain_error("delta must be > 0, got " + std::to_string(delta));
    }

    ModelParams with_mu(double m) const { ModelParams p = *this; p.mu = m; return p; }
    ModelParams with_t(double tt) const { ModelParams p = *this; p.t = tt; return p; }
    ModelParams with_alpha(double a) const { ModelParams p = *this; p.alpha = a; return p; }
    ModelParams with_L(int n) const { ModelParams p = *this; p.L = n; return p; }
};

// One point of the antiperiodic grid k = (2n+1) pi / L.
struct Momentum {
    double k = 0.0;
    int n = 0;
};

// Positive momenta only, ascending: {pi/L, 3pi/L, ..., pi - pi/L}, L/2 values.
// Negative-k modes are related by symmetry and never enumerated.
inline std::vector<Momentum> momentum_grid(int L) {
    if (L < 4 || L % 2 != 0)
        throw domain_error("momentum_grid: L must be an even integer >= 4, got " + std::to_string(L));
    std::vector<Momentum> ks;
    ks.reserve(static_cast<std::size_t>(L) / 2);
    for (int n = 0; n < L / 2; ++n)
        ks.push_back({(2.0 * n + 1.0) * pi / L, n});
    return ks;
}

// Bare pairing sum f_alpha(k) = sum_{y=1}^{L-1} sin(k y) / d_y^alpha.
// Odd in k by construction: the sign is split off and |k| goes through the
// same arithmetic path, so f(-k) == -f(k) holds exactly.
inline double pairing_function(double k, const ModelParams& p) {
    p.validate();
    const double sign = k < 0.0 ? -1.0 : 1.0;
    const double ka = std::abs(k);
    double sum = 0.0;
    for (int y = 1; y < p.L; ++y) {
        const int d = p.convention == Convention::Open ? y : std::min(y, p.L - y);
        sum += std::sin(ka * y) / std::pow(static_cast<double>(d), p.alpha);
    }
    return sign * sum;
}

// Pairing sums for every positive grid momentum. This table depends only on
// (L, alpha, convention), not on mu/t/delta, so sweeps reuse it heavily.
inline std::vector<double> pairing_table(const ModelParams& p) {
    const auto ks = momentum_grid(p.L);
    std::vector<double> f(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i)
        f[i] = pairing_function(ks[i].k, p);
    return f;
}

// The alpha -> infinity limit of the Open-convention sum: only y = 1 survives.
inline std::vector<double> short_range_table(int L) {
    const auto ks = momentum_grid(L);
    std::vector<double> f(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i)
        f[i] = std::sin(ks[i].k);
    return f;
}

struct ModeState {
    Momentum k;
    double f = 0.0;        // delta * pairing sum (off-diagonal of H_k)
    double g = 0.0;        // mu + t cos k      (diagonal of H_k)
    double epsilon = 0.0;  // sqrt(g^2 + f^2)
    double theta = 0.0;    // Bogoliubov angle, tan(2 theta) = -f / g
    bool gapless = false;  // (g, f) == (0, 0): theta is arbitrary, set to 0
};

// Assemble a mode from a precomputed bare pairing value (table fast path).
inline ModeState mode_state(Momentum k, const ModelParams& p, double f_bare) {
    ModeState m;
    m.k = k;
    m.f = p.delta * f_bare;
    m.g = p.mu + p.t * std::cos(k.k);
    m.epsilon = std::hypot(m.g, m.f);
    if (m.epsilon == 0.0) {
        // removable singularity: any angle diagonalizes the zero matrix
        m.theta = 0.0;
        m.gapless = true;
    } else {
        // half the two-argument arctangent keeps the branch continuous in g, f
        m.theta = 0.5 * std::atan2(-m.f, m.g);
    }
    return m;
}

inline ModeState mode_state(Momentum k, const ModelParams& p) {
    p.validate();
    return mode_state(k, p, pairing_function(k.k, p));
}

// Quasiparticle energies over the positive grid, ascending in k.
inline std::vector<std::pair<double, double>> dispersion_curve(const ModelParams& p) {
    p.validate();
    const auto ks = momentum_grid(p.L);
    const auto f = pairing_table(p);
    std::vector<std::pair<double, double>> out;
    out.reserve(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const ModeState m = mode_state(ks[i], p, f[i]);
        out.emplace_back(ks[i].k, m.epsilon);
    }
    return out;
}

} // namespace lrk
