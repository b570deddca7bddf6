#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "risrate/errors.hpp"
#include "risrate/gamma.hpp"
#include "risrate/quadrature.hpp"

namespace risrate {

// Order indices, parameter lists and contour controls for one evaluation
// of G^{m,n}_{p,q}[x | a; b].
struct MeijerGSpec {
    int m, n, p, q;
    std::vector<double> a;  // size p, first n are the "upper-left" block
    std::vector<double> b;  // size q, first m are the "lower-left" block
    std::optional<double> contour_re;  // auto-selected when empty
    double truncation_height = 40.0;
    double rel_tol = 1e-9;

    MeijerGSpec(int m_, int n_, int p_, int q_, std::vector<double> a_,
                std::vector<double> b_)
        : m(m_), n(n_), p(p_), q(q_), a(std::move(a_)), b(std::move(b_)) {
        if (m < 0 || n < 0 || m > q || n > p)
            throw ConfigError("MeijerGSpec: need 0 <= m <= q and 0 <= n <= p");
        if (static_cast<int>(a.size()) != p || static_cast<int>(b.size()) != q)
            throw ConfigError("MeijerGSpec: parameter list sizes must equal p and q");
        const auto [lo, hi] = pole_bounds();
        if (!(lo < hi))
            throw ContourError("MeijerGSpec: pole families overlap, no separating contour");
    }

    // Left poles (from Gamma(1 - a_k + s)) lie at Re s <= max(a_k) - 1;
    // right poles (from Gamma(b_j - s)) at Re s >= min(b_j).
    std::pair<double, double> pole_bounds() const {
        double lo = -1e300, hi = 1e300;
        for (int k = 0; k < n; ++k) lo = std::max(lo, a[k] - 1.0);
        for (int j = 0; j < m; ++j) hi = std::min(hi, b[j]);
        return {lo, hi};
    }

};

namespace detail {

// log of the Mellin-Barnes integrand's gamma ratio at s, up to 2*pi*i.
inline complex_t log_gamma_ratio(const MeijerGSpec& g, complex_t s) {
    complex_t acc{0.0, 0.0};
    for (int j = 0; j < g.m; ++j) acc += log_gamma(g.b[j] - s).as_complex();
    for (int k = 0; k < g.n; ++k) acc += log_gamma(1.0 - g.a[k] + s).as_complex();
    for (int j = g.m; j < g.q; ++j) acc -= log_gamma(1.0 - g.b[j] + s).as_complex();
    for (int k = g.n; k < g.p; ++k) acc -= log_gamma(g.a[k] - s).as_complex();
    return acc;
}

// log|integrand| on the real axis, used to place the contour.
inline double log_abs_integrand_at(const MeijerGSpec& g, double sigma, double log_x) {
    double acc = sigma * log_x;
    for (int j = 0; j < g.m; ++j) acc += std::lgamma(g.b[j] - sigma);
    for (int k = 0; k < g.n; ++k) acc += std::lgamma(1.0 - g.a[k] + sigma);
    for (int j = g.m; j < g.q; ++j) acc -= std::lgamma(1.0 - g.b[j] + sigma);
    for (int k = g.n; k < g.p; ++k) acc -= std::lgamma(g.a[k] - sigma);
    return acc;
}

// Saddle-point abscissa: the log-magnitude at t = 0 blows up at both pole
// boundaries, so minimizing it over the strip keeps the oscillatory
// cancellation along the contour small. Golden-section search.
inline double select_abscissa(const MeijerGSpec& g, double log_x) {
    auto [lo, hi] = g.pole_bounds();
    if (lo <= -1e300) lo = hi - 200.0;
    if (hi >= 1e300) hi = lo + 200.0;
    const double w = hi - lo;
    double a = lo + 1e-6 * w;
    double b = hi - 1e-6 * w;
    constexpr double phi = 0.61803398874989485;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = log_abs_integrand_at(g, x1, log_x);
    double f2 = log_abs_integrand_at(g, x2, log_x);
    for (int it = 0; it < 80 && (b - a) > 1e-10 * w; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = log_abs_integrand_at(g, x1, log_x);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = log_abs_integrand_at(g, x2, log_x);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace detail

// G^{m,n}_{p,q}[x | a; b] scaled by e^{-log_scale}, by numerical
// integration along the vertical contour Re s = sigma. For real x and
// real parameters the integrand at conjugate points is conjugate, so only
// the upper half-line is integrated and the real part doubled. The
// truncation height grows geometrically until the tail panel is
// negligible against the accumulated integral.
inline double meijer_g_scaled(const MeijerGSpec& spec, double x, double log_scale) {
    if (x <= 0.0) throw DomainError("meijer_g: requires x > 0");
    const double decay = spec.m + spec.n - 0.5 * (spec.p + spec.q);
    if (decay <= 0.0)
        throw ConvergenceError(
            "meijer_g: vertical contour integral does not converge (m+n <= (p+q)/2)", 1.0);

    const double log_x = std::log(x);
    const double sigma =
        spec.contour_re ? *spec.contour_re : detail::select_abscissa(spec, log_x);
    {
        const auto [lo, hi] = spec.pole_bounds();
        if (!(sigma > lo && sigma < hi))
            throw ContourError("meijer_g: contour abscissa does not separate pole families");
    }
    // Normalize by the contour-crossing magnitude so the integrand stays
    // O(1); the offset is restored on the result.
    const double log_peak = detail::log_abs_integrand_at(spec, sigma, log_x);

    auto integrand_full = [&](double t) -> complex_t {
        const complex_t s{sigma, t};
        const complex_t ls =
            detail::log_gamma_ratio(spec, s) + s * log_x - log_peak;
        // decays like e^{-decay*pi*|t|}; cut off well below double range
        if (ls.real() < -745.0) return {0.0, 0.0};
        return std::exp(ls);
    };
    auto integrand = [&](double t) { return integrand_full(t).real(); };

    const double tol = spec.rel_tol;
    double t_lo = 0.0;
    double t_hi = std::min(8.0, spec.truncation_height);
    double total = 0.0;
    double total_err = 0.0;
    bool tail_done = false;
    while (true) {
        auto r = integrate_adaptive(integrand, t_lo, t_hi, 0.25 * tol, 0.0, 4000, false);
        total += r.value;
        total_err += r.abs_error;
        // tail bound: integrand decays at least like e^{-decay*pi*t}
        const double tail =
            std::abs(integrand_full(t_hi)) / (decay * std::numbers::pi);
        if (tail <= 0.1 * tol * std::abs(total) + 1e-300) {
            tail_done = true;
            break;
        }
        if (t_hi >= spec.truncation_height) break;
        t_lo = t_hi;
        t_hi = std::min(2.0 * t_hi, spec.truncation_height);
    }
    const double achieved = total_err / std::max(std::abs(total), 1e-300);
    if (!tail_done)
        throw ConvergenceError("meijer_g: truncation height reached before tail vanished",
                               achieved);
    if (achieved > 10.0 * tol)
        throw ConvergenceError("meijer_g: quadrature error above rel_tol", achieved);
    return total / std::numbers::pi * std::exp(log_peak - log_scale);
}

inline double meijer_g(const MeijerGSpec& spec, double x) {
    return meijer_g_scaled(spec, x, 0.0);
}

namespace detail {

// exp(z) - 1 accurate for small |z|
inline complex_t cexpm1(complex_t z) {
    if (std::abs(z) > 0.5) return std::exp(z) - 1.0;
    complex_t term = z;
    complex_t sum = z;
    for (int k = 2; k < 24; ++k) {
        term *= z / static_cast<double>(k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace detail

// w_pos * G(x_pos) - w_neg * G(x_neg), both with the same parameter spec,
// evaluated as a single contour integral so the difference is formed
// analytically inside the integrand instead of between two rounded
// results. The weight factor w_pos x_pos^s - w_neg x_neg^s can cancel a
// left pole of the gamma ratio exactly; when the caller knows the
// combined integrand is regular further left than the nominal pole bound
// it may pass contour_lo to widen the admissible strip (the shifted
// contour is equivalent because no surviving singularity is crossed).
inline double meijer_g_weighted_diff(const MeijerGSpec& spec, double x_pos,
                                     double w_pos, double x_neg, double w_neg,
                                     double log_scale,
                                     std::optional<double> contour_lo = {}) {
    if (x_pos <= 0.0 || x_neg <= 0.0)
        throw DomainError("meijer_g_weighted_diff: requires x > 0");
    if (!(w_pos > 0.0) || !(w_neg > 0.0))
        throw DomainError("meijer_g_weighted_diff: requires positive weights");
    const double decay = spec.m + spec.n - 0.5 * (spec.p + spec.q);
    if (decay <= 0.0)
        throw ConvergenceError(
            "meijer_g_weighted_diff: contour integral does not converge", 1.0);

    const double lx_pos = std::log(x_pos), lx_neg = std::log(x_neg);
    const double lw_pos = std::log(w_pos), lw_neg = std::log(w_neg);

    // real parts of the two exponents at abscissa sigma
    auto l_pos = [&](double sg) { return sg * lx_pos + lw_pos; };
    auto l_neg = [&](double sg) { return sg * lx_neg + lw_neg; };

    auto log_factor = [&](double sg) {
        const double lp = l_pos(sg), ln_ = l_neg(sg);
        const double base = std::max(lp, ln_);
        const double d = lp >= ln_ ? ln_ - lp : lp - ln_;
        // The factor's real zero coincides with a cancelled gamma pole;
        // floor it so roundoff there cannot fake a -inf dip in the
        // placement objective.
        return base + std::log(std::max(std::abs(std::expm1(d)), 1e-13));
    };
    auto objective = [&](double sg) {
        return detail::log_abs_integrand_at(spec, sg, 0.0) + log_factor(sg);
    };

    auto [lo, hi] = spec.pole_bounds();
    if (contour_lo) lo = *contour_lo;
    // a pole-free left half-plane admits deep saddles (Bessel-type tails)
    if (lo <= -1e300) lo = hi - 600.0;
    if (hi >= 1e300) hi = lo + 200.0;
    if (!(lo < hi))
        throw ContourError("meijer_g_weighted_diff: empty contour strip");

    // golden-section minimum of the on-axis magnitude
    const double w = hi - lo;
    double a = lo + 1e-6 * w, b = hi - 1e-6 * w;
    constexpr double phi = 0.61803398874989485;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = objective(x1), f2 = objective(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-10 * w; ++it) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - phi * (b - a);
            f1 = objective(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + phi * (b - a);
            f2 = objective(x2);
        }
    }
    const double sigma = 0.5 * (a + b);
    const double log_peak = objective(sigma);

    const bool pos_is_base = l_pos(sigma) >= l_neg(sigma);
    const double lbase = pos_is_base ? l_pos(sigma) : l_neg(sigma);

    auto integrand_full = [&](double t) -> complex_t {
        const complex_t s{sigma, t};
        const complex_t ls =
            detail::log_gamma_ratio(spec, s) + complex_t{lbase, 0.0} +
            complex_t{0.0, t * (pos_is_base ? lx_pos : lx_neg)} - log_peak;
        // difference factor relative to the dominant term
        const complex_t dl =
            pos_is_base
                ? complex_t{l_neg(sigma) - l_pos(sigma), t * (lx_neg - lx_pos)}
                : complex_t{l_pos(sigma) - l_neg(sigma), t * (lx_pos - lx_neg)};
        const complex_t factor =
            pos_is_base ? -detail::cexpm1(dl) : detail::cexpm1(dl);
        if (ls.real() < -700.0) return {0.0, 0.0};
        return std::exp(ls) * factor;
    };
    auto integrand = [&](double t) { return integrand_full(t).real(); };

    const double tol = spec.rel_tol;
    // exponential decay in t only sets in beyond |sigma|, so deep saddles
    // need a proportionally taller contour
    const double t_cap = std::max(spec.truncation_height, 8.0 * (std::abs(sigma) + 1.0));
    double t_lo = 0.0;
    double t_hi = std::min(8.0, t_cap);
    double total = 0.0;
    double total_err = 0.0;
    bool tail_done = false;
    while (true) {
        auto r = integrate_adaptive(integrand, t_lo, t_hi, 0.25 * tol, 0.0, 4000, false);
        total += r.value;
        total_err += r.abs_error;
        const double tail = std::abs(integrand_full(t_hi)) / (decay * std::numbers::pi);
        if (tail <= 0.1 * tol * std::abs(total) + 1e-300) {
            tail_done = true;
            break;
        }
        if (t_hi >= t_cap) break;
        t_lo = t_hi;
        t_hi = std::min(2.0 * t_hi, t_cap);
    }
    const double achieved = total_err / std::max(std::abs(total), 1e-300);
    if (!tail_done)
        throw ConvergenceError(
            "meijer_g_weighted_diff: truncation height reached before tail vanished",
            achieved);
    if (achieved > 10.0 * tol)
        throw ConvergenceError("meijer_g_weighted_diff: quadrature error above rel_tol",
                               achieved);
    return total / std::numbers::pi * std::exp(log_peak - log_scale);
}

}  // namespace risrate
