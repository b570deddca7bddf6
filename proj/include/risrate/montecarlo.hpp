#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "risrate/channel.hpp"
#include "risrate/effrate.hpp"
#include "risrate/errors.hpp"
#include "risrate/rng.hpp"

namespace risrate {

enum class McScenario { full_uncertainty, phase_only, ideal_phase };

struct McRequest {
    SystemConfig cfg;
    McScenario scenario = McScenario::full_uncertainty;
    // Required for phase_only / ideal_phase; ignored for full_uncertainty.
    std::optional<double> d_RD;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    unsigned shards = 8;

    void validate() const {
        if (samples < 1) throw ConfigError("McRequest: samples must be >= 1");
        if (shards < 1) throw ConfigError("McRequest: shards must be >= 1");
        if (scenario != McScenario::full_uncertainty) {
            if (!d_RD || !(*d_RD > 0.0))
                throw ConfigError("McRequest: fixed-distance scenario needs d_RD > 0");
        }
    }
};

struct Histogram {
    std::vector<double> edges;    // bins+1 log-spaced edges
    std::vector<double> density;  // normalized to unit mass
};

struct McResult {
    RateEstimate rate;
    double moment_M;
    double moment_M_stderr;
    double ergodic_capacity;
    double ergodic_capacity_stderr;
    std::string rng_id;
};

namespace detail {

struct KahanSum {
    double sum = 0.0;
    double c = 0.0;
    void add(double v) {
        const double y = v - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

struct ShardAccum {
    KahanSum m;        // (1+gamma)^-A
    KahanSum m2;       // squared, for the variance
    KahanSum cap;      // log2(1+gamma)
    KahanSum cap2;
};

inline double draw_snr(const McRequest& req, Xoshiro256ss& rng) {
    const auto& cfg = req.cfg;
    std::complex<double> sum{0.0, 0.0};
    for (int l = 0; l < cfg.L; ++l) {
        // Rayleigh amplitudes with E[h^2] = 2: sqrt(-2 ln U)
        const double h = std::sqrt(-2.0 * std::log(rng.uniform_pos()));
        const double g = std::sqrt(-2.0 * std::log(rng.uniform_pos()));
        double eps = 0.0;
        if (req.scenario != McScenario::ideal_phase)
            eps = (2.0 * rng.uniform() - 1.0) * std::numbers::pi;
        sum += h * g * std::polar(1.0, eps);
    }
    double d_rd;
    if (req.scenario == McScenario::full_uncertainty) {
        // inverse-CDF draw of the annulus distance
        const double u = rng.uniform();
        d_rd = std::sqrt(cfg.R1 * cfg.R1 + u * (cfg.R2 * cfg.R2 - cfg.R1 * cfg.R1));
    } else {
        d_rd = *req.d_RD;
    }
    return cfg.gamma_bar_fixed(d_rd) * std::norm(sum);
}

inline std::pair<std::uint64_t, std::uint64_t> shard_range(std::uint64_t samples,
                                                           unsigned shards,
                                                           unsigned i) {
    const std::uint64_t base = samples / shards;
    const std::uint64_t rem = samples % shards;
    const std::uint64_t begin = base * i + std::min<std::uint64_t>(i, rem);
    const std::uint64_t count = base + (i < rem ? 1 : 0);
    return {begin, count};
}

}  // namespace detail

// Single SNR draw from the coherently combined cascade; exposed mainly for tests.
inline double sample_snr(const McRequest& req, Xoshiro256ss& rng) {
    return detail::draw_snr(req, rng);
}

// Deterministic sharded Monte Carlo run. Shard i uses stream (seed, i);
// the final reduction is sequential in shard order, so the result is
// bit-reproducible for a given (seed, shards, samples).
inline McResult run_mc(const McRequest& req) {
    req.validate();
    const double A = req.cfg.qos.A;
    const unsigned shards = req.shards;
    std::vector<detail::ShardAccum> acc(shards);

    auto work = [&](unsigned i) {
        auto [begin, count] = detail::shard_range(req.samples, shards, i);
        (void)begin;
        Xoshiro256ss rng(req.seed, i);
        detail::ShardAccum& a = acc[i];
        for (std::uint64_t k = 0; k < count; ++k) {
            const double snr = detail::draw_snr(req, rng);
            const double w = std::pow(1.0 + snr, -A);
            const double c = std::log2(1.0 + snr);
            a.m.add(w);
            a.m2.add(w * w);
            a.cap.add(c);
            a.cap2.add(c * c);
        }
    };

    if (shards == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(shards);
        for (unsigned i = 0; i < shards; ++i) threads.emplace_back(work, i);
        for (auto& t : threads) t.join();
    }

    detail::KahanSum m, m2, cap, cap2;
    for (unsigned i = 0; i < shards; ++i) {
        m.add(acc[i].m.sum);
        m2.add(acc[i].m2.sum);
        cap.add(acc[i].cap.sum);
        cap2.add(acc[i].cap2.sum);
    }
    const double n = static_cast<double>(req.samples);
    double moment = m.sum / n;
    const double var_m = std::max(0.0, m2.sum / n - moment * moment);
    const double se_m = std::sqrt(var_m / n);
    const double cap_mean = cap.sum / n;
    const double var_c = std::max(0.0, cap2.sum / n - cap_mean * cap_mean);
    const double se_c = std::sqrt(var_c / n);

    bool clamped = false;
    const double rate = detail::rate_from_moment(moment, A, clamped);
    // delta method: d rate / d M = -1 / (A M ln 2)
    const double rate_se = se_m / (A * moment * std::numbers::ln2);
    const RateMethod method = req.scenario == McScenario::ideal_phase
                                  ? RateMethod::ideal_mc
                                  : RateMethod::monte_carlo;
    RateEstimate est{rate, method, 1.96 * rate_se, req.cfg, clamped};
    return {est, moment, se_m, cap_mean, se_c, kRngId};
}

// Normalized empirical PDF of gamma over log-spaced bins. Default bin
// span covers the central 99.99% of the sampled values.
inline Histogram empirical_pdf(const McRequest& req, std::size_t bins = 200) {
    req.validate();
    std::vector<double> samples;
    samples.reserve(req.samples);
    for (unsigned i = 0; i < req.shards; ++i) {
        auto [begin, count] = detail::shard_range(req.samples, req.shards, i);
        (void)begin;
        Xoshiro256ss rng(req.seed, i);
        for (std::uint64_t k = 0; k < count; ++k)
            samples.push_back(detail::draw_snr(req, rng));
    }
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double lo = sorted[static_cast<std::size_t>(5e-5 * n)];
    const double hi = sorted[std::min(n - 1, static_cast<std::size_t>((1.0 - 5e-5) * n))];

    Histogram h;
    h.edges.resize(bins + 1);
    h.density.assign(bins, 0.0);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (std::size_t i = 0; i <= bins; ++i)
        h.edges[i] = std::exp(llo + (lhi - llo) * i / bins);
    std::size_t inside = 0;
    for (double v : samples) {
        if (v < lo || v >= hi) continue;
        auto it = std::upper_bound(h.edges.begin(), h.edges.end(), v);
        const std::size_t bin = static_cast<std::size_t>(it - h.edges.begin()) - 1;
        h.density[std::min(bin, bins - 1)] += 1.0;
        ++inside;
    }
    for (std::size_t i = 0; i < bins; ++i)
        h.density[i] /= inside * (h.edges[i + 1] - h.edges[i]);
    return h;
}

// One-sample Kolmogorov-Smirnov distance between the sampled SNR and a
// model CDF (any callable double -> double).
template <typename Cdf>
double ks_distance(const McRequest& req, Cdf&& cdf) {
    req.validate();
    std::vector<double> samples;
    samples.reserve(req.samples);
    for (unsigned i = 0; i < req.shards; ++i) {
        auto [begin, count] = detail::shard_range(req.samples, req.shards, i);
        (void)begin;
        Xoshiro256ss rng(req.seed, i);
        for (std::uint64_t k = 0; k < count; ++k)
            samples.push_back(detail::draw_snr(req, rng));
    }
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        worst = std::max(worst, std::abs(f - i / n));
        worst = std::max(worst, std::abs((i + 1) / n - f));
    }
    return worst;
}

}  // namespace risrate
