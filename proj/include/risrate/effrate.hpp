#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "risrate/channel.hpp"
#include "risrate/errors.hpp"
#include "risrate/meijer.hpp"
#include "risrate/quadrature.hpp"

namespace risrate {

enum class RateMethod { closed, quadrature, phase_only, asymptotic, monte_carlo, ideal_mc };

inline const char* to_string(RateMethod m) {
    switch (m) {
        case RateMethod::closed: return "closed";
        case RateMethod::quadrature: return "quad";
        case RateMethod::phase_only: return "phase_only";
        case RateMethod::asymptotic: return "asym";
        case RateMethod::monte_carlo: return "mc";
        case RateMethod::ideal_mc: return "ideal_mc";
    }
    return "?";
}

// Effective-rate value in bit/s/Hz plus numerical-error metadata. For
// Monte Carlo estimates err_abs is the half-width of the 95% CI.
struct RateEstimate {
    double rate;
    RateMethod method;
    double err_abs;
    std::optional<SystemConfig> meta;
    bool moment_clamped = false;  // M was in (1, 1+1e-9] and got clamped
};

namespace detail {

// Map the moment M = E[(1+gamma)^-A] to a rate, rejecting values that a
// correct evaluator cannot produce.
inline double rate_from_moment(double& moment, double A, bool& clamped) {
    if (!(moment > 0.0) || moment > 1.0 + 1e-9)
        throw MomentOutOfRange("moment E[(1+gamma)^-A] outside (0, 1]: " +
                               std::to_string(moment));
    clamped = moment > 1.0;
    if (clamped) moment = 1.0;
    return -std::log2(moment) / A;
}

}  // namespace detail

// Exact closed form: difference of two G^{3,2}_{2,4} evaluations.
inline RateEstimate effective_rate_closed(const SystemConfig& cfg) {
    const double A = cfg.qos.A;
    const double d = cfg.delta;
    const double L = cfg.L;
    const double gbar = cfg.gamma_bar();
    MeijerGSpec g(3, 2, 2, 4, {-2.0 / d, 0.0}, {L - 1.0, 0.0, A - 1.0, -1.0 - 2.0 / d});
    const double log_scale = std::lgamma(L) + std::lgamma(A);
    // Single-contour difference avoids cancellation between the two terms.
    const double diff = meijer_g_weighted_diff(
        g, std::pow(cfg.R2, d) / (4.0 * gbar), std::pow(cfg.R2, 2.0 + d),
        std::pow(cfg.R1, d) / (4.0 * gbar), std::pow(cfg.R1, 2.0 + d), log_scale);
    double moment = diff / (2.0 * d * gbar * (cfg.R2 * cfg.R2 - cfg.R1 * cfg.R1));
    bool clamped = false;
    const double rate = detail::rate_from_moment(moment, A, clamped);
    return {rate, RateMethod::closed, 1e-8 * std::abs(rate), cfg, clamped};
}

// Definition of the effective rate, integrated directly against the
// closed-form SNR PDF via gamma = t/(1-t).
inline RateEstimate effective_rate_quadrature(const SystemConfig& cfg,
                                              double rel_tol = 1e-8) {
    const double A = cfg.qos.A;
    auto f = [&](double gamma) {
        return std::pow(1.0 + gamma, -A) * pdf_snr(gamma, cfg);
    };
    auto r = integrate_zero_to_inf(f, rel_tol);
    double moment = r.value;
    bool clamped = false;
    const double rate = detail::rate_from_moment(moment, A, clamped);
    const double err = r.abs_error / (moment * A * std::numbers::ln2);
    return {rate, RateMethod::quadrature, err, cfg, clamped};
}

// Phase-estimation error alone, both distances fixed (folded into
// gamma_bar_eff): a single G^{3,1}_{1,3} evaluation.
inline RateEstimate effective_rate_phase_only(double gamma_bar_eff, int L, double A) {
    if (!(gamma_bar_eff > 0.0))
        throw DomainError("effective_rate_phase_only: requires gamma_bar_eff > 0");
    if (L < 1) throw DomainError("effective_rate_phase_only: requires L >= 1");
    if (!(A > 0.0)) throw DomainError("effective_rate_phase_only: requires A > 0");
    MeijerGSpec g(3, 1, 1, 3, {0.0}, {L - 1.0, 0.0, A - 1.0});
    const double log_scale = std::lgamma(double(L)) + std::lgamma(A);
    double moment =
        meijer_g_scaled(g, 1.0 / (4.0 * gamma_bar_eff), log_scale) / (4.0 * gamma_bar_eff);
    bool clamped = false;
    const double rate = detail::rate_from_moment(moment, A, clamped);
    return {rate, RateMethod::phase_only, 1e-8 * std::abs(rate), std::nullopt, clamped};
}

// High-SNR asymptote; requires L > 1 and A > 1.
inline RateEstimate effective_rate_asymptotic(const SystemConfig& cfg) {
    const double A = cfg.qos.A;
    const double L = cfg.L;
    if (L <= 1 || A <= 1.0)
        throw AsymptoteUndefined("effective_rate_asymptotic: requires L > 1 and A > 1");
    const double d = cfg.delta;
    const double gbar = cfg.gamma_bar();
    const double num = std::pow(cfg.R2, 2.0 + d) - std::pow(cfg.R1, 2.0 + d);
    const double den =
        gbar * (2.0 * d + 4.0) * (L - 1.0) * (A - 1.0) * (cfg.R2 * cfg.R2 - cfg.R1 * cfg.R1);
    const double rate = -std::log2(num / den) / A;
    return {rate, RateMethod::asymptotic, 0.0, cfg, false};
}

}  // namespace risrate
