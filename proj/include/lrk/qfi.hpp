#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "model.hpp"

// Quantum Fisher information of the BCS-form ground state with respect to
// (t, mu). Each positive-k mode contributes the rank-1 matrix
//   F_k = 4 (d theta_k) (d theta_k)^T,
// with d_mu theta = f / (2 eps^2) and d_t theta = f cos k / (2 eps^2); the
// total is the mode sum. An independent cross-check comes from the fidelity
// susceptibility (qfi_mu_oracle below).

namespace lrk {

// Symmetric 2x2 QFI matrix over (t, mu); only three entries stored.
struct QfiMatrix2 {
    double f_tt = 0.0;
    double f_tmu = 0.0;
    double f_mumu = 0.0;

    QfiMatrix2& operator+=(const QfiMatrix2& o) {
        f_tt += o.f_tt;
        f_tmu += o.f_tmu;
        f_mumu += o.f_mumu;
        return *this;
    }
    double det() const { return f_tt * f_mumu - f_tmu * f_tmu; }
};

// Guard against exactly-gapless modes: the angle derivative ~ 1/eps^2 is
// meaningless there. Cannot happen on the even-L antiperiodic grid for
// mu, t > 0 and alpha > 1, but the guard costs nothing.
inline constexpr double gapless_eps = 1e-14;

inline QfiMatrix2 mode_qfi(const ModeState& m) {
    if (m.epsilon < gapless_eps)
        throw singular_mode_error(m.k.k, "gapless mode at k = " + std::to_string(m.k.k) +
                                             ": QFI derivative diverges");
    const double eps2 = m.epsilon * m.epsilon;
    const double dtheta_mu = m.f / (2.0 * eps2);
    const double dtheta_t = dtheta_mu * std::cos(m.k.k);
    QfiMatrix2 q;
    q.f_tt = 4.0 * dtheta_t * dtheta_t;
    q.f_tmu = 4.0 * dtheta_t * dtheta_mu;
    q.f_mumu = 4.0 * dtheta_mu * dtheta_mu;
    return q;
}

inline QfiMatrix2 mode_qfi(Momentum k, const ModelParams& p) {
    return mode_qfi(mode_state(k, p));
}

// Mode sum in ascending-k order; the fixed reduction order makes results
// bit-identical no matter how callers schedule the surrounding sweep.
inline QfiMatrix2 qfi_matrix(const ModelParams& p, const std::vector<double>& f_bare) {
    const auto ks = momentum_grid(p.L);
    QfiMatrix2 total;
    for (std::size_t i = 0; i < ks.size(); ++i)
        total += mode_qfi(mode_state(ks[i], p, f_bare[i]));
    return total;
}

inline QfiMatrix2 qfi_matrix(const ModelParams& p) {
    p.validate();
    return qfi_matrix(p, pairing_table(p));
}

// Fast path for the mu-mu entry alone: F_mumu = sum_k f^2 / eps^4.
inline double qfi_mu(const ModelParams& p, const std::vector<double>& f_bare) {
    const auto ks = momentum_grid(p.L);
    double total = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const ModeState m = mode_state(ks[i], p, f_bare[i]);
        if (m.epsilon < gapless_eps)
            throw singular_mode_error(m.k.k, "gapless mode at k = " + std::to_string(m.k.k) +
                                                 ": QFI derivative diverges");
        const double eps2 = m.epsilon * m.epsilon;
        const double r = m.f / eps2;
        total += r * r;
    }
    return total;
}

inline double qfi_mu(const ModelParams& p) {
    p.validate();
    return qfi_mu(p, pairing_table(p));
}

namespace detail {
// log of prod_k |cos(theta_k(p1) - theta_k(p2))|, accumulated via log1p of
// -2 sin^2(dtheta/2) so that near-unit fidelities keep full precision.
inline double log_fidelity(const ModelParams& p1, const ModelParams& p2) {
    p1.validate();
    p2.validate();
    if (p1.L != p2.L || p1.alpha != p2.alpha || p1.convention != p2.convention)
        throw domain_error("ground_state_fidelity: states live on different grids "
                           "(L, alpha, convention must match)");
    const auto ks = momentum_grid(p1.L);
    const auto f1 = pairing_table(p1);
    // same (L, alpha, convention) means the bare pairing table is shared
    double acc = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const double th1 = mode_state(ks[i], p1, f1[i]).theta;
        const double th2 = mode_state(ks[i], p2, f1[i]).theta;
        const double s = std::sin(0.5 * (th1 - th2));
        // |cos x| = |1 - 2 sin^2(x/2)|; the angles differ by far less than
        // pi/2 in practice, so the absolute value never actually bites
        acc += std::log(std::abs(1.0 - 2.0 * s * s));
    }
    return acc;
}
} // namespace detail

// Overlap of the two BCS ground states: prod_{k>0} |cos(theta_k - theta_k')|.
inline double ground_state_fidelity(const ModelParams& p1, const ModelParams& p2) {
    return std::exp(detail::log_fidelity(p1, p2));
}

// 1 - fidelity, computed without cancellation (the fidelity is often within
// 1e-10 of 1, where forming 1 - exp(log F) directly would lose every digit).
inline double ground_state_infidelity(const ModelParams& p1, const ModelParams& p2) {
    return -std::expm1(detail::log_fidelity(p1, p2));
}

// Fidelity-susceptibility estimate of F_mumu: central finite difference
//   8 (1 - F(mu - d/2, mu + d/2)) / d^2.
// Independent of the derivative-based path, hence usable as an oracle.
inline double qfi_mu_oracle(const ModelParams& p, double delta_mu) {
    if (!(delta_mu >= 1e-7 && delta_mu <= 1e-3))
        throw domain_error("qfi_mu_oracle: step must lie in [1e-7, 1e-3], got " +
                           std::to_string(delta_mu));
    const double infid =
        ground_state_infidelity(p.with_mu(p.mu - 0.5 * delta_mu), p.with_mu(p.mu + 0.5 * delta_mu));
    return 8.0 * infid / (delta_mu * delta_mu);
}

} // namespace lrk
