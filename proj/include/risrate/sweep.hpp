#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "risrate/config.hpp"
#include "risrate/effrate.hpp"
#include "risrate/errors.hpp"
#include "risrate/montecarlo.hpp"

namespace risrate {

enum class SweepAxis { rho_db, L, coverage_area, theta, d_RD };

inline const char* to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::rho_db: return "rho_db";
        case SweepAxis::L: return "L";
        case SweepAxis::coverage_area: return "coverage_area";
        case SweepAxis::theta: return "theta";
        case SweepAxis::d_RD: return "d_RD";
    }
    return "?";
}

inline SweepAxis sweep_axis_from(const std::string& s) {
    if (s == "rho_db") return SweepAxis::rho_db;
    if (s == "L") return SweepAxis::L;
    if (s == "coverage_area") return SweepAxis::coverage_area;
    if (s == "theta") return SweepAxis::theta;
    if (s == "d_RD") return SweepAxis::d_RD;
    throw ConfigError("unknown sweep axis: " + s);
}

inline RateMethod rate_method_from(const std::string& s) {
    if (s == "closed") return RateMethod::closed;
    if (s == "quad") return RateMethod::quadrature;
    if (s == "mc") return RateMethod::monte_carlo;
    if (s == "asym") return RateMethod::asymptotic;
    if (s == "phase_only") return RateMethod::phase_only;
    if (s == "ideal_mc") return RateMethod::ideal_mc;
    throw ConfigError("unknown method: " + s);
}

struct SweepSpec {
    SweepAxis axis;
    std::vector<double> grid;  // strictly increasing
    std::vector<RateMethod> methods;
    SystemConfig base;
    std::uint64_t mc_samples = 100'000;
    std::uint64_t mc_seed = 1;
    unsigned mc_shards = 8;
    // fixed RIS-to-destination distance for phase_only / ideal_mc rows;
    // defaults to base.R2
    std::optional<double> d_RD;

    void validate() const {
        if (grid.empty()) throw ConfigError("SweepSpec: grid must be non-empty");
        for (std::size_t i = 1; i < grid.size(); ++i)
            if (!(grid[i] > grid[i - 1]))
                throw ConfigError("SweepSpec: grid must be strictly increasing");
        if (methods.empty()) throw ConfigError("SweepSpec: methods must be non-empty");
        // Method preconditions (e.g. the asymptote needs L > 1 and A > 1)
        // are checked per point by run_sweep so a single undefined point
        // does not abort a whole sweep.
    }
};

struct SweepRow {
    std::string axis;
    double axis_value;
    std::string method;
    double rate = std::nan("");  // nan marks a failed evaluation
    double err = std::nan("");
    std::string error;  // empty when the point evaluated cleanly
};

struct SweepTable {
    std::vector<SweepRow> rows;
    std::string meta_hash;
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string sweep_fingerprint(const SweepSpec& s) {
    std::string txt = std::string(to_string(s.axis)) + "|";
    for (double g : s.grid) txt += format_full(g) + ",";
    txt += "|";
    for (RateMethod m : s.methods) txt += std::string(to_string(m)) + ",";
    const auto& b = s.base;
    txt += "|" + format_full(b.rho) + "," + format_full(b.delta) + "," +
           std::to_string(b.L) + "," + format_full(b.R1) + "," + format_full(b.R2) +
           "," + format_full(b.d_SR) + "," + format_full(b.qos.A);
    txt += "|" + std::to_string(s.mc_samples) + "," + std::to_string(s.mc_seed) + "," +
           std::to_string(s.mc_shards);
    if (s.d_RD) txt += "," + format_full(*s.d_RD);
    txt += "|";
    txt += kRngId;
    return txt;
}

inline SystemConfig config_at(const SweepSpec& s, double v) {
    SystemConfig c = s.base;
    switch (s.axis) {
        case SweepAxis::rho_db:
            return SystemConfig(db_to_linear(v), c.delta, c.L, c.R1, c.R2, c.d_SR, c.qos);
        case SweepAxis::L:
            return SystemConfig(c.rho, c.delta, static_cast<int>(v), c.R1, c.R2, c.d_SR,
                                c.qos);
        case SweepAxis::coverage_area: {
            // area = pi (R2^2 - R1^2), R1 held fixed
            const double r2 = std::sqrt(v / std::numbers::pi + c.R1 * c.R1);
            return SystemConfig(c.rho, c.delta, c.L, c.R1, r2, c.d_SR, c.qos);
        }
        case SweepAxis::theta:
            // theta sweeps use TB = 1
            return SystemConfig(c.rho, c.delta, c.L, c.R1, c.R2, c.d_SR,
                                QoSConfig::from_theta(v, 1.0, 1.0));
        case SweepAxis::d_RD:
            return c;  // handled per-method below
    }
    return c;
}

}  // namespace detail

// One row per (grid point, method), emitted in grid order; deterministic
// for a fixed spec (including mc_seed). Per-point failures land in the
// row's error field with nan rate, never abort the sweep.
inline SweepTable run_sweep(const SweepSpec& spec) {
    spec.validate();
    SweepTable table;
    char hash_buf[20];
    std::snprintf(hash_buf, sizeof hash_buf, "%016llx",
                  static_cast<unsigned long long>(
                      detail::fnv1a(detail::sweep_fingerprint(spec))));
    table.meta_hash = hash_buf;

    for (double v : spec.grid) {
        const SystemConfig cfg = detail::config_at(spec, v);
        const double d_rd_fixed =
            spec.axis == SweepAxis::d_RD ? v : spec.d_RD.value_or(cfg.R2);
        for (RateMethod m : spec.methods) {
            SweepRow row{to_string(spec.axis), v, to_string(m)};
            try {
                switch (m) {
                    case RateMethod::closed: {
                        auto r = effective_rate_closed(cfg);
                        row.rate = r.rate;
                        row.err = r.err_abs;
                        break;
                    }
                    case RateMethod::quadrature: {
                        auto r = effective_rate_quadrature(cfg);
                        row.rate = r.rate;
                        row.err = r.err_abs;
                        break;
                    }
                    case RateMethod::asymptotic: {
                        auto r = effective_rate_asymptotic(cfg);
                        row.rate = r.rate;
                        row.err = r.err_abs;
                        break;
                    }
                    case RateMethod::phase_only: {
                        auto r = effective_rate_phase_only(
                            cfg.gamma_bar_fixed(d_rd_fixed), cfg.L, cfg.qos.A);
                        row.rate = r.rate;
                        row.err = r.err_abs;
                        break;
                    }
                    case RateMethod::monte_carlo: {
                        McRequest req{cfg, McScenario::full_uncertainty, std::nullopt,
                                      spec.mc_samples, spec.mc_seed, spec.mc_shards};
                        auto r = run_mc(req);
                        row.rate = r.rate.rate;
                        row.err = r.rate.err_abs;
                        break;
                    }
                    case RateMethod::ideal_mc: {
                        McRequest req{cfg, McScenario::ideal_phase, d_rd_fixed,
                                      spec.mc_samples, spec.mc_seed, spec.mc_shards};
                        auto r = run_mc(req);
                        row.rate = r.rate.rate;
                        row.err = r.rate.err_abs;
                        break;
                    }
                }
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

// CSV: fixed header, LF newlines, full double round-trip precision.
inline void emit_csv(const SweepTable& table, std::ostream& out) {
    out << "axis,axis_value,method,rate_bps_hz,err,meta_hash\n";
    for (const auto& r : table.rows) {
        out << r.axis << ',' << detail::format_full(r.axis_value) << ',' << r.method
            << ',' << detail::format_full(r.rate) << ',' << detail::format_full(r.err)
            << ',' << table.meta_hash << '\n';
    }
}

inline void emit_csv(const SweepTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    emit_csv(table, out);
    if (!out) throw ConfigError("write failed: " + path);
}

// Inverse of emit_csv, for round-trip checks and downstream tooling.
inline SweepTable parse_csv(std::istream& in) {
    SweepTable t;
    std::string line;
    if (!std::getline(in, line) ||
        line != "axis,axis_value,method,rate_bps_hz,err,meta_hash")
        throw ConfigError("csv: bad or missing header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (fields.size() != 6) throw ConfigError("csv: expected 6 fields");
        SweepRow r{fields[0], std::stod(fields[1]), fields[2], std::stod(fields[3]),
                   std::stod(fields[4])};
        t.rows.push_back(std::move(r));
        t.meta_hash = fields[5];
    }
    return t;
}

// Build a SweepSpec from a parsed config file.
inline SweepSpec sweep_spec_from(const ConfigFile& cf) {
    reject_unknown_keys(cf);
    SweepSpec s{sweep_axis_from(cf.get_string("axis")),
                cf.get_list("grid"),
                {},
                system_config_from(cf)};
    for (const auto& m : cf.get_string_list("methods"))
        s.methods.push_back(rate_method_from(m));
    if (cf.has("mc_samples")) s.mc_samples = cf.get_int("mc_samples");
    if (cf.has("mc_seed")) s.mc_seed = cf.get_int("mc_seed");
    if (cf.has("mc_shards")) s.mc_shards = static_cast<unsigned>(cf.get_int("mc_shards"));
    if (cf.has("d_RD")) s.d_RD = cf.get_double("d_RD");
    s.validate();
    return s;
}

}  // namespace risrate
