#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "risrate/errors.hpp"

namespace risrate {

namespace detail {

// Scaled pair e^x * {K0(x), K1(x)}.
struct ScaledK01 {
    double k0;
    double k1;
};

// Series for K0 on (0, 2]:
//   K0(x) = -(log(x/2) + eulergamma) I0(x) + sum_{k>=1} (x^2/4)^k/(k!)^2 H_k
// K1 then follows from the Wronskian K1 = (1/x - I1 K0) / I0.
inline ScaledK01 k01_series(double x) {
    constexpr double eulergamma = 0.57721566490153286060651209008240;
    const double t = 0.25 * x * x;
    const double lh = std::log(0.5 * x);

    double term0 = 1.0;   // (x^2/4)^k / (k!)^2
    double i0 = 1.0;
    double s0 = 0.0;      // harmonic-weighted sum
    double hk = 0.0;
    double term1 = 1.0;   // (x^2/4)^k / (k! (k+1)!)
    double i1 = 1.0;      // I1(x) / (x/2)
    for (int k = 1; k < 60; ++k) {
        term0 *= t / (static_cast<double>(k) * k);
        hk += 1.0 / k;
        i0 += term0;
        s0 += term0 * hk;
        term1 *= t / (static_cast<double>(k) * (k + 1));
        i1 += term1;
        if (term0 < 1e-18 * i0 && term1 < 1e-18 * i1) break;
    }
    const double k0 = -(lh + eulergamma) * i0 + s0;
    const double k1 = (1.0 / x - (0.5 * x * i1) * k0) / i0;
    const double ex = std::exp(x);
    return {k0 * ex, k1 * ex};
}

// Steed/Thompson-Barnett continued fraction CF2 for x > 2, giving
// scaled e^x K0, K1 to near machine precision.
inline ScaledK01 k01_cf2(double x) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    // CF2 for nu = 0 (Numerical-Recipes style Temme/CF2 with complex-free form)
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;  // mu = 0: a1 = 1/4 - mu^2
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int i = 2;
    for (; i <= 20000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) <= eps) break;
    }
    const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
    const double k1 = k0 * (0.5 + x - a1 * h) / x;
    return {k0, k1};
}

}  // namespace detail

// log K_n(x) for integer n >= 0, x > 0. Upward recurrence with
// renormalization, usable for any n and x where the result fits a double
// in log space.
inline double log_bessel_k_int(int order, double x) {
    if (x <= 0.0) throw DomainError("bessel_k: requires x > 0");
    if (order < 0) throw DomainError("bessel_k: requires order >= 0");
    detail::ScaledK01 k = (x <= 2.0) ? detail::k01_series(x) : detail::k01_cf2(x);
    double log_scale = -x;  // values carried as e^x K_n
    if (order == 0) return std::log(k.k0) + log_scale;
    double km = k.k0;
    double kc = k.k1;
    for (int n = 1; n < order; ++n) {
        const double knext = km + (2.0 * n / x) * kc;
        km = kc;
        kc = knext;
        if (kc > 1e250) {
            km *= 1e-250;
            kc *= 1e-250;
            log_scale += 250.0 * std::numbers::ln10;
        }
    }
    return std::log(kc) + log_scale;
}

// K_n(x). Underflows to 0 (with errno untouched) once log K < log(DBL_MIN).
inline double bessel_k_int(int order, double x) {
    const double lk = log_bessel_k_int(order, x);
    if (lk < -745.0) return 0.0;
    return std::exp(lk);
}

// True when bessel_k_int(order, x) would underflow to zero.
inline bool bessel_k_underflows(int order, double x) {
    return log_bessel_k_int(order, x) < -745.0;
}

}  // namespace risrate
