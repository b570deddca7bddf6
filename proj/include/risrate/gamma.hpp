#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "risrate/errors.hpp"

namespace risrate {

using complex_t = std::complex<double>;

// log Gamma(z) split into modulus and argument. The phase is arg Gamma(z)
// reduced to (-pi, pi]; exp(log_modulus + i*phase) reproduces Gamma(z).
struct LogGammaValue {
    double log_modulus;
    double phase;

    complex_t as_complex() const { return {log_modulus, phase}; }
    complex_t gamma() const { return std::exp(complex_t{log_modulus, phase}); }
};

namespace detail {

// Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficients).
// Relative accuracy ~1e-15 for Re z >= 0.5.
inline constexpr double kLanczosG = 607.0 / 128.0;
inline constexpr double kLanczosC[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

inline complex_t lanczos_log_gamma(complex_t z) {
    // valid for Re z >= 0.5; z shifted so the sum runs over z-1+k
    const complex_t zm1 = z - 1.0;
    complex_t sum = kLanczosC[0];
    for (int k = 1; k < 15; ++k) sum += kLanczosC[k] / (zm1 + static_cast<double>(k));
    const complex_t t = zm1 + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (zm1 + 0.5) * std::log(t) - t +
           std::log(sum);
}

// log(sin(pi*z)) up to an integer multiple of 2*pi*i, safe against
// overflow for large |Im z|.
inline complex_t log_sin_pi(complex_t z) {
    constexpr double kLogHalf = -0.69314718055994530941723212145818;
    const complex_t iz = complex_t{0.0, 1.0} * (std::numbers::pi * z);
    if (z.imag() >= 0.0) {
        // sin(pi z) = -e^{-i pi z} (1 - e^{2 i pi z}) / (2i)
        return -iz + std::log(complex_t{1.0} - std::exp(2.0 * iz)) +
               complex_t{kLogHalf, 0.5 * std::numbers::pi};
    }
    // sin(pi z) = e^{i pi z} (1 - e^{-2 i pi z}) / (2i)
    return iz + std::log(complex_t{1.0} - std::exp(-2.0 * iz)) +
           complex_t{kLogHalf, -0.5 * std::numbers::pi};
}

}  // namespace detail

// Principal-branch log Gamma(z) for complex z, via Lanczos with reflection
// for Re z < 0.5. The phase component is reduced mod 2*pi into (-pi, pi].
inline LogGammaValue log_gamma(complex_t z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 &&
        std::abs(z.real() - std::round(z.real())) < 1e-13) {
        throw PoleError("log_gamma: argument at non-positive integer pole");
    }
    complex_t lg;
    if (z.real() >= 0.5) {
        lg = detail::lanczos_log_gamma(z);
    } else {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        lg = std::log(std::numbers::pi) - detail::log_sin_pi(z) -
             detail::lanczos_log_gamma(1.0 - z);
    }
    double phase = std::remainder(lg.imag(), 2.0 * std::numbers::pi);
    if (phase <= -std::numbers::pi) phase += 2.0 * std::numbers::pi;
    return {lg.real(), phase};
}

// Real log Gamma for x > 0.
inline double log_gamma_real(double x) {
    if (x <= 0.0) throw PoleError("log_gamma_real: requires x > 0");
    return std::lgamma(x);
}

}  // namespace risrate
