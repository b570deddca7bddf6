#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "risrate/channel.hpp"
#include "risrate/errors.hpp"

namespace risrate {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// Key/value view of a plain-text config file ("key = value", '#' comments).
// Unknown keys are rejected by the callers that consume the map.
struct ConfigFile {
    std::map<std::string, std::string> values;
    std::map<std::string, int> lines;  // key -> line number, for messages

    bool has(const std::string& k) const { return values.count(k) != 0; }

    double get_double(const std::string& k) const {
        const auto it = values.find(k);
        if (it == values.end()) throw ConfigError("missing required key: " + k);
        try {
            std::size_t pos = 0;
            const double v = std::stod(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("line " + std::to_string(lines.at(k)) +
                              ": invalid number for key " + k + ": " + it->second);
        }
    }

    long get_int(const std::string& k) const {
        const double v = get_double(k);
        if (v != std::floor(v))
            throw ConfigError("line " + std::to_string(lines.at(k)) + ": key " + k +
                              " must be an integer");
        return static_cast<long>(v);
    }

    std::string get_string(const std::string& k) const {
        const auto it = values.find(k);
        if (it == values.end()) throw ConfigError("missing required key: " + k);
        return it->second;
    }

    std::vector<double> get_list(const std::string& k) const {
        std::vector<double> out;
        std::stringstream ss(get_string(k));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                out.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw ConfigError("line " + std::to_string(lines.at(k)) +
                                  ": invalid list entry for key " + k + ": " + item);
            }
        }
        return out;
    }

    std::vector<std::string> get_string_list(const std::string& k) const {
        std::vector<std::string> out;
        std::stringstream ss(get_string(k));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto b = item.find_first_not_of(" \t");
            const auto e = item.find_last_not_of(" \t");
            if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
        }
        return out;
    }
};

inline ConfigFile parse_config_text(std::istream& in) {
    ConfigFile cf;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto nb = line.find_first_not_of(" \t\r\n");
        if (nb == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r\n");
            const auto e = s.find_last_not_of(" \t\r\n");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (cf.values.count(key))
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key " + key);
        cf.values[key] = val;
        cf.lines[key] = lineno;
    }
    return cf;
}

inline ConfigFile parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_config_text(in);
}

inline const std::set<std::string>& known_config_keys() {
    static const std::set<std::string> keys = {
        "rho_db", "delta", "L", "R1", "R2", "d_SR", "A", "theta", "T", "B",
        "axis", "grid", "methods", "mc_samples", "mc_seed", "mc_shards", "d_RD"};
    return keys;
}

inline void reject_unknown_keys(const ConfigFile& cf) {
    for (const auto& [k, v] : cf.values) {
        if (!known_config_keys().count(k))
            throw ConfigError("line " + std::to_string(cf.lines.at(k)) +
                              ": unknown key " + k);
    }
}

inline QoSConfig qos_from_config(const ConfigFile& cf) {
    if (cf.has("A")) {
        if (cf.has("theta"))
            throw ConfigError("specify either A or theta/T/B, not both");
        return QoSConfig::from_a(cf.get_double("A"));
    }
    if (cf.has("theta")) {
        const double T = cf.has("T") ? cf.get_double("T") : 1.0;
        const double B = cf.has("B") ? cf.get_double("B") : 1.0;
        return QoSConfig::from_theta(cf.get_double("theta"), T, B);
    }
    throw ConfigError("missing required key: A (or theta)");
}

inline SystemConfig system_config_from(const ConfigFile& cf) {
    reject_unknown_keys(cf);
    for (const char* k : {"rho_db", "delta", "L", "R1", "R2"})
        if (!cf.has(k)) throw ConfigError(std::string("missing required key: ") + k);
    const double d_sr = cf.has("d_SR") ? cf.get_double("d_SR") : 1.0;
    return SystemConfig(db_to_linear(cf.get_double("rho_db")), cf.get_double("delta"),
                        static_cast<int>(cf.get_int("L")), cf.get_double("R1"),
                        cf.get_double("R2"), d_sr, qos_from_config(cf));
}

}  // namespace risrate
