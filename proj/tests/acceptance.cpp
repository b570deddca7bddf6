// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion
// and exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "risrate/config.hpp"
#include "risrate/effrate.hpp"
#include "risrate/montecarlo.hpp"
#include "risrate/sweep.hpp"

using namespace risrate;

namespace {

int g_failures = 0;

struct Criterion {
    const char* name;
    std::chrono::steady_clock::time_point start;
    bool ok = true;
    std::string detail;

    explicit Criterion(const char* n) : name(n), start(std::chrono::steady_clock::now()) {}

    void require(bool cond, const std::string& msg) {
        if (!cond && ok) {
            ok = false;
            detail = msg;
        }
    }

    ~Criterion() {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        std::printf("[%s] %-60s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", name, secs,
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++g_failures;
    }
};

SystemConfig baseline_cfg(double rho_db, int L, double A = 5.4) {
    return SystemConfig(db_to_linear(rho_db), 3.4, L, 2.0, 5.0, 1.0,
                        QoSConfig::from_a(A));
}

std::string fmt(double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

double snr_cdf_model(double g, const SystemConfig& cfg) {
    const double gbar = cfg.gamma_bar();
    auto f = [&](double y) {
        return cdf_cascade_x(g * y / gbar, cfg.L) *
               pdf_pathloss(y, cfg.R1, cfg.R2, cfg.delta);
    };
    return integrate_adaptive(f, std::pow(cfg.R1, cfg.delta),
                              std::pow(cfg.R2, cfg.delta), 1e-9)
        .value;
}

void criterion_1_identities() {
    Criterion c("1. Meijer-G identity suites at 1e-8");
    for (double cc : {0.5, 1.0, 2.0, 5.4}) {
        MeijerGSpec g(1, 1, 1, 1, {1.0 - cc}, {0.0});
        for (int i = 0; i < 20; ++i) {
            const double x = std::pow(10.0, -3.0 + 6.0 * i / 19.0);
            const double want = std::tgamma(cc) * std::pow(1.0 + x, -cc);
            const double rel = std::abs(meijer_g(g, x) - want) / want;
            c.require(rel <= 1e-8, "pow identity c=" + fmt(cc) + " x=" + fmt(x) +
                                       " rel=" + fmt(rel));
        }
    }
    for (int nu = 0; nu <= 6; ++nu) {
        MeijerGSpec g(2, 0, 0, 2, {}, {double(nu), 0.0});
        for (int i = 0; i < 20; ++i) {
            const double z = std::pow(10.0, -2.0 + 4.0 * i / 19.0);
            const double want =
                2.0 * std::pow(z, 0.5 * nu) * bessel_k_int(nu, 2.0 * std::sqrt(z));
            const double rel = std::abs(meijer_g(g, z) - want) / want;
            c.require(rel <= 1e-8,
                      "bessel identity nu=" + std::to_string(nu) + " rel=" + fmt(rel));
        }
    }
}

void criterion_2_normalization() {
    Criterion c("2. distribution normalizations at 1e-6");
    for (int L : {10, 40}) {
        const auto cfg = baseline_cfg(10.0, L);
        auto r = integrate_zero_to_inf([&](double g) { return pdf_snr(g, cfg); }, 1e-7);
        c.require(std::abs(r.value - 1.0) <= 1e-6,
                  "pdf_snr L=" + std::to_string(L) + " mass=" + fmt(r.value));
        auto rx = integrate_adaptive(
            [&](double u) { return pdf_cascade_x(u * u, L) * 2.0 * u; }, 1e-12, 500.0,
            1e-9);
        c.require(std::abs(rx.value - 1.0) <= 1e-6,
                  "pdf_cascade_x L=" + std::to_string(L));
        auto rf = integrate_adaptive(
            [&](double u) { return pdf_snr_fixed(u * u, 5.0, L) * 2.0 * u; }, 1e-12,
            2000.0, 1e-9);
        c.require(std::abs(rf.value - 1.0) <= 1e-6,
                  "pdf_snr_fixed L=" + std::to_string(L));
    }
    auto rd = integrate_adaptive([](double r) { return pdf_distance(r, 2.0, 5.0); },
                                 2.0, 5.0, 1e-10);
    c.require(std::abs(rd.value - 1.0) <= 1e-6, "pdf_distance");
    auto ry = integrate_adaptive(
        [](double y) { return pdf_pathloss(y, 2.0, 5.0, 3.4); }, std::pow(2.0, 3.4),
        std::pow(5.0, 3.4), 1e-10);
    c.require(std::abs(ry.value - 1.0) <= 1e-6, "pdf_pathloss");
}

void criterion_3_closed_vs_oracle() {
    Criterion c("3. closed forms vs independent quadrature oracles");
    const auto cfg = baseline_cfg(10.0, 40);
    for (int i = 0; i < 12; ++i) {
        const double g = std::pow(10.0, -2.0 + 6.0 * i / 11.0);
        const double a = pdf_snr(g, cfg);
        const double b = pdf_snr_by_mixing(g, cfg);
        c.require(std::abs(a - b) / b <= 1e-6, "pdf gamma=" + fmt(g));
    }
    for (int L : {10, 30, 50}) {
        for (double db : {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0}) {
            const auto cc = baseline_cfg(db, L);
            const double rc = effective_rate_closed(cc).rate;
            const double rq = effective_rate_quadrature(cc).rate;
            c.require(std::abs(rc - rq) <= 1e-6, "rate L=" + std::to_string(L) +
                                                     " rho_db=" + fmt(db) +
                                                     " diff=" + fmt(rc - rq));
        }
    }
    // fixed-distance closed form vs its defining integral
    const double ge = 10.0;
    const double rp = effective_rate_phase_only(ge, 40, 5.4).rate;
    auto m = integrate_zero_to_inf(
        [&](double g) { return std::pow(1.0 + g, -5.4) * pdf_snr_fixed(g, ge, 40); },
        1e-9);
    const double rq = -std::log2(m.value) / 5.4;
    c.require(std::abs(rp - rq) <= 1e-6, "phase_only diff=" + fmt(rp - rq));
}

void criterion_4_monte_carlo() {
    Criterion c("4. closed form inside 99% MC CI; KS <= 0.002 at 1e6");
    for (int L : {10, 30, 50}) {
        for (double db : {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0}) {
            const auto cfg = baseline_cfg(db, L);
            const double closed = effective_rate_closed(cfg).rate;
            McRequest req{cfg, McScenario::full_uncertainty, std::nullopt, 1'000'000,
                          0xC0FFEE + std::uint64_t(L * 100 + int(db)), 8};
            const auto mc = run_mc(req);
            const double ci99 = mc.rate.err_abs * (2.576 / 1.96);
            c.require(std::abs(mc.rate.rate - closed) <= ci99,
                      "L=" + std::to_string(L) + " rho_db=" + fmt(db) + " diff=" +
                          fmt(mc.rate.rate - closed) + " ci99=" + fmt(ci99));
        }
    }
    const auto cfg = baseline_cfg(10.0, 40);
    const int grid_n = 400;
    std::vector<double> gx(grid_n), gf(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        gx[i] = std::pow(10.0, -3.0 + 8.0 * i / (grid_n - 1.0));
        gf[i] = snr_cdf_model(gx[i], cfg);
    }
    auto cdf = [&](double g) {
        if (g <= gx.front()) return gf.front();
        if (g >= gx.back()) return gf.back();
        const auto it = std::upper_bound(gx.begin(), gx.end(), g);
        const std::size_t j = it - gx.begin();
        const double t = std::log(g / gx[j - 1]) / std::log(gx[j] / gx[j - 1]);
        return gf[j - 1] + t * (gf[j] - gf[j - 1]);
    };
    McRequest req{cfg, McScenario::full_uncertainty, std::nullopt, 1'000'000, 424242, 8};
    const double ks = ks_distance(req, cdf);
    c.require(ks <= 0.002, "KS=" + fmt(ks));
}

void criterion_5_normalization_pin() {
    Criterion c("5. MC mean of X equals 4L within 3 SE");
    for (int L : {1, 10, 40}) {
        SystemConfig cfg(1.0, 1.0, L, 2.0, 5.0, 1.0, QoSConfig::from_a(1.0));
        McRequest req{cfg, McScenario::phase_only, 1.0, 1'000'000,
                      std::uint64_t(555 + L), 1};
        req.validate();
        Xoshiro256ss rng(req.seed, 0);
        double sum = 0.0, sum2 = 0.0;
        const int n = 1'000'000;
        for (int i = 0; i < n; ++i) {
            const double x = sample_snr(req, rng);
            sum += x;
            sum2 += x * x;
        }
        const double mean = sum / n;
        const double se = std::sqrt((sum2 / n - mean * mean) / n);
        c.require(std::abs(mean - 4.0 * L) <= 3.0 * se,
                  "L=" + std::to_string(L) + " mean=" + fmt(mean) + " se=" + fmt(se));
    }
}

void criterion_6_qualitative() {
    Criterion c("6. qualitative trends (L, rho, scenarios, coverage, theta, delta)");
    // rate increasing in rho and L
    for (int L : {10, 30, 50}) {
        double prev = -1e9;
        for (double db : {0.0, 10.0, 20.0, 30.0}) {
            const double r = effective_rate_closed(baseline_cfg(db, L)).rate;
            c.require(r > prev, "not increasing in rho at L=" + std::to_string(L));
            prev = r;
        }
    }
    for (double db : {0.0, 10.0, 20.0, 30.0}) {
        const double r10 = effective_rate_closed(baseline_cfg(db, 10)).rate;
        const double r30 = effective_rate_closed(baseline_cfg(db, 30)).rate;
        const double r50 = effective_rate_closed(baseline_cfg(db, 50)).rate;
        c.require(r50 > r30 && r30 > r10, "not increasing in L at rho_db=" + fmt(db));
    }
    // ideal >= phase-only >= full uncertainty (d_RD at R2), with MC CIs
    for (double db : {0.0, 10.0, 20.0}) {
        const auto cfg = baseline_cfg(db, 40);
        McRequest ideal{cfg, McScenario::ideal_phase, cfg.R2, 200'000, 61, 8};
        const auto mi = run_mc(ideal);
        const double rp = effective_rate_phase_only(cfg.gamma_bar_fixed(cfg.R2), cfg.L,
                                                    cfg.qos.A)
                              .rate;
        const double rf = effective_rate_closed(cfg).rate;
        c.require(mi.rate.rate + mi.rate.err_abs * (2.576 / 1.96) >= rp,
                  "ideal < phase_only at rho_db=" + fmt(db));
        // location uncertainty up to R2 only degrades vs fixed d_RD = R2
        c.require(rf >= rp, "full uncertainty below phase-only floor at rho_db=" + fmt(db));
    }
    // decreasing in coverage area
    double prev = 1e9;
    for (double area : {20.0, 60.0, 120.0, 200.0}) {
        const double r2 = std::sqrt(area / std::numbers::pi + 4.0);
        SystemConfig cfg(db_to_linear(5.0), 3.4, 40, 2.0, r2, 1.0, QoSConfig::from_a(5.4));
        const double r = effective_rate_closed(cfg).rate;
        c.require(r < prev, "not decreasing in coverage area");
        prev = r;
    }
    // decreasing in theta and in delta (L=20, R2=8, TB=1)
    for (double delta : {2.0, 2.7, 3.5, 4.0}) {
        prev = 1e9;
        for (double theta : {0.05, 0.2, 1.0, 4.0}) {
            SystemConfig cfg(db_to_linear(5.0), delta, 20, 2.0, 8.0, 1.0,
                             QoSConfig::from_theta(theta, 1.0, 1.0));
            const double r = effective_rate_closed(cfg).rate;
            c.require(r < prev, "not decreasing in theta at delta=" + fmt(delta));
            prev = r;
        }
    }
    for (double theta : {0.2, 1.0}) {
        prev = 1e9;
        for (double delta : {2.0, 2.7, 3.5, 4.0}) {
            SystemConfig cfg(db_to_linear(5.0), delta, 20, 2.0, 8.0, 1.0,
                             QoSConfig::from_theta(theta, 1.0, 1.0));
            const double r = effective_rate_closed(cfg).rate;
            c.require(r < prev, "not decreasing in delta at theta=" + fmt(theta));
            prev = r;
        }
    }
}

void criterion_7_asymptote() {
    Criterion c("7. asymptote underestimates, gap shrinks, <5% at 40 dB");
    double prev_gap = 1e9;
    for (double db : {20.0, 25.0, 30.0, 35.0, 40.0}) {
        const auto cfg = baseline_cfg(db, 40);
        const double rc = effective_rate_closed(cfg).rate;
        const double ra = effective_rate_asymptotic(cfg).rate;
        const double gap = (rc - ra) / rc;
        c.require(ra <= rc, "asymptote above closed at rho_db=" + fmt(db));
        c.require(gap < prev_gap, "gap not shrinking at rho_db=" + fmt(db));
        if (db == 40.0) c.require(gap < 0.05, "gap at 40 dB = " + fmt(gap));
        prev_gap = gap;
    }
    bool threw = false;
    try {
        effective_rate_asymptotic(baseline_cfg(10.0, 1));
    } catch (const AsymptoteUndefined&) {
        threw = true;
    }
    c.require(threw, "L=1 did not raise AsymptoteUndefined");
}

void criterion_8_determinism() {
    Criterion c("8. byte-identical CSV for identical sweep spec and seed");
    std::istringstream spec_text(
        "rho_db = 10\ndelta = 3.4\nL = 40\nR1 = 2\nR2 = 5\nA = 5.4\n"
        "axis = rho_db\ngrid = 0,10,20\nmethods = closed,mc,asym\n"
        "mc_samples = 50000\nmc_seed = 77\n");
    const auto spec = sweep_spec_from(parse_config_text(spec_text));
    std::ostringstream a, b;
    emit_csv(run_sweep(spec), a);
    emit_csv(run_sweep(spec), b);
    c.require(a.str() == b.str(), "CSV outputs differ");
    c.require(a.str().find("closed") != std::string::npos, "missing rows");
}

}  // namespace

int main() {
    criterion_1_identities();
    criterion_2_normalization();
    criterion_3_closed_vs_oracle();
    criterion_4_monte_carlo();
    criterion_5_normalization_pin();
    criterion_6_qualitative();
    criterion_7_asymptote();
    criterion_8_determinism();
    std::printf("%d criterion failure(s)\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
