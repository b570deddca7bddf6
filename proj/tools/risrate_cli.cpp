// Command-line front end: single-point rate evaluation, parameter sweeps
// with CSV output, and a self-check command.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "risrate/config.hpp"
#include "risrate/effrate.hpp"
#include "risrate/montecarlo.hpp"
#include "risrate/sweep.hpp"

namespace {

using namespace risrate;

struct CommonFlags {
    double rho_db = 10.0;
    double delta = 3.4;
    int L = 40;
    double R1 = 2.0;
    double R2 = 5.0;
    double d_SR = 1.0;
    std::optional<double> A;
    std::optional<double> theta;
    double T = 1.0;
    double B = 1.0;

    void add_to(CLI::App* app) {
        app->add_option("--rho-db", rho_db, "transmit SNR rho in dB");
        app->add_option("--delta", delta, "path-loss exponent");
        app->add_option("--L", L, "number of RIS elements");
        app->add_option("--R1", R1, "ring inner radius [m]");
        app->add_option("--R2", R2, "ring outer radius [m]");
        app->add_option("--d-SR", d_SR, "source-to-RIS distance [m]");
        app->add_option("--A", A, "QoS exponent A (theta*T*B/ln2)");
        app->add_option("--theta", theta, "buffer decay rate theta [1/bit]");
        app->add_option("--T", T, "block length [s] (with --theta)");
        app->add_option("--B", B, "bandwidth [Hz] (with --theta)");
    }

    SystemConfig to_config() const {
        QoSConfig qos = A ? QoSConfig::from_a(*A)
                          : (theta ? QoSConfig::from_theta(*theta, T, B)
                                   : QoSConfig::from_a(5.4));
        return SystemConfig(db_to_linear(rho_db), delta, L, R1, R2, d_SR, qos);
    }
};

int cmd_rate(const CommonFlags& flags, const std::vector<std::string>& methods,
             std::uint64_t samples, std::uint64_t seed, unsigned shards,
             std::optional<double> d_rd) {
    const SystemConfig cfg = flags.to_config();
    const double d_rd_fixed = d_rd.value_or(cfg.R2);
    for (const auto& name : methods) {
        const RateMethod m = rate_method_from(name);
        try {
            RateEstimate r{0.0, m, 0.0, std::nullopt};
            switch (m) {
                case RateMethod::closed: r = effective_rate_closed(cfg); break;
                case RateMethod::quadrature: r = effective_rate_quadrature(cfg); break;
                case RateMethod::asymptotic: r = effective_rate_asymptotic(cfg); break;
                case RateMethod::phase_only:
                    r = effective_rate_phase_only(cfg.gamma_bar_fixed(d_rd_fixed), cfg.L,
                                                  cfg.qos.A);
                    break;
                case RateMethod::monte_carlo: {
                    McRequest req{cfg, McScenario::full_uncertainty, std::nullopt,
                                  samples, seed, shards};
                    r = run_mc(req).rate;
                    break;
                }
                case RateMethod::ideal_mc: {
                    McRequest req{cfg, McScenario::ideal_phase, d_rd_fixed, samples,
                                  seed, shards};
                    r = run_mc(req).rate;
                    break;
                }
            }
            std::printf("%-10s %.12g bit/s/Hz  (err %.3g)\n", name.c_str(), r.rate,
                        r.err_abs);
        } catch (const std::exception& e) {
            std::printf("%-10s error: %s\n", name.c_str(), e.what());
        }
    }
    return 0;
}

int cmd_validate() {
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        std::printf("%-52s %s\n", name, ok ? "PASS" : "FAIL");
        if (!ok) ++failures;
    };

    // G-function identities
    bool id11 = true;
    for (double c : {0.5, 1.0, 2.0, 5.4}) {
        for (int i = 0; i < 20; ++i) {
            const double x = std::pow(10.0, -3.0 + 6.0 * i / 19.0);
            MeijerGSpec g(1, 1, 1, 1, {1.0 - c}, {0.0});
            const double want = std::tgamma(c) * std::pow(1.0 + x, -c);
            id11 = id11 && std::abs(meijer_g(g, x) - want) / want <= 1e-8;
        }
    }
    check("meijer_g (1+x)^-c identity", id11);

    bool idk = true;
    for (int nu = 0; nu <= 6; ++nu) {
        for (int i = 0; i < 10; ++i) {
            const double z = std::pow(10.0, -2.0 + 4.0 * i / 9.0);
            MeijerGSpec g(2, 0, 0, 2, {}, {double(nu), 0.0});
            const double want =
                2.0 * std::pow(z, nu / 2.0) * bessel_k_int(nu, 2.0 * std::sqrt(z));
            idk = idk && std::abs(meijer_g(g, z) - want) / want <= 1e-8;
        }
    }
    check("meijer_g Bessel-K reduction", idk);

    const SystemConfig cfg(10.0, 3.4, 40, 2.0, 5.0, 1.0, QoSConfig::from_a(5.4));
    auto norm = integrate_zero_to_inf([&](double g) { return pdf_snr(g, cfg); }, 1e-7);
    check("pdf_snr normalization", std::abs(norm.value - 1.0) <= 1e-6);

    bool mix = true;
    for (int i = 0; i < 12; ++i) {
        const double g = std::pow(10.0, -2.0 + 6.0 * i / 11.0);
        const double a = pdf_snr(g, cfg);
        const double b = pdf_snr_by_mixing(g, cfg);
        mix = mix && std::abs(a - b) / b <= 1e-6;
    }
    check("pdf_snr closed form vs mixing integral", mix);

    const auto rc = effective_rate_closed(cfg);
    const auto rq = effective_rate_quadrature(cfg);
    check("effective rate closed vs quadrature", std::abs(rc.rate - rq.rate) <= 1e-6);

    McRequest req{cfg, McScenario::full_uncertainty, std::nullopt, 200'000, 1234, 8};
    const auto mc = run_mc(req);
    const double ci99 = 2.576 / 1.96 * mc.rate.err_abs;
    check("effective rate closed vs Monte Carlo",
          std::abs(mc.rate.rate - rc.rate) <= ci99);

    std::printf("%d failure(s)\n", failures);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Effective rate of RIS-assisted links under phase-error and "
                 "location uncertainty"};
    app.require_subcommand(1);

    CommonFlags rate_flags;
    std::vector<std::string> methods{"closed", "quad", "asym", "phase_only", "mc"};
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    unsigned shards = 8;
    std::optional<double> d_rd;

    auto* rate = app.add_subcommand("rate", "evaluate a single configuration");
    rate_flags.add_to(rate);
    rate->add_option("--method", methods, "methods to run");
    rate->add_option("--samples", samples, "Monte Carlo samples");
    rate->add_option("--seed", seed, "Monte Carlo seed");
    rate->add_option("--shards", shards, "Monte Carlo shards");
    rate->add_option("--d-RD", d_rd, "fixed RIS-to-D distance [m] for phase_only/ideal_mc");

    std::string spec_path, out_path = "sweep.csv";
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep from a spec file");
    sweep->add_option("--spec", spec_path, "sweep spec file (key = value)")->required();
    sweep->add_option("--out", out_path, "output CSV path");

    auto* validate = app.add_subcommand("validate", "run the built-in invariant suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (rate->parsed())
            return cmd_rate(rate_flags, methods, samples, seed, shards, d_rd);
        if (sweep->parsed()) {
            const auto table = risrate::run_sweep(
                risrate::sweep_spec_from(risrate::parse_config_file(spec_path)));
            risrate::emit_csv(table, out_path);
            int failed = 0;
            for (const auto& r : table.rows)
                if (!r.error.empty()) {
                    std::fprintf(stderr, "point %s=%g method %s failed: %s\n",
                                 r.axis.c_str(), r.axis_value, r.method.c_str(),
                                 r.error.c_str());
                    ++failed;
                }
            std::printf("wrote %zu rows to %s (%d failed point(s))\n",
                        table.rows.size(), out_path.c_str(), failed);
            return 0;
        }
        if (validate->parsed()) return cmd_validate();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
