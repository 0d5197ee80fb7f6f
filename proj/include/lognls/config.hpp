#pragma once

// Flat key=value experiment configuration: file parsing, CLI overrides,
// validation with key-specific diagnostics, canonical echo for artifacts.

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lognls/stability.hpp"

namespace lognls {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ExperimentConfig {
    double gamma = 1.0;
    double omega = 1.0;
    double L = 12.0;
    int n = 1537;
    double dt = 1e-3;
    double T = 20.0;
    double m_reg = 1e8;
    double tol = 1e-8;
    unsigned seed = 1;
    double epsilon = 1e-3;
    PerturbationKind perturbation = PerturbationKind::random_h1;
    std::string output_dir = "out";

    void validate() const {
        if (!(L > 0.0)) throw ConfigError("config key 'L': must be positive");
        if (n < 3 || n % 2 == 0)
            throw ConfigError("config key 'n': must be an odd integer >= 3 (a node must sit at x=0)");
        if (!(dt > 0.0)) throw ConfigError("config key 'dt': must be positive");
        if (!(T >= 0.0)) throw ConfigError("config key 'T': must be nonnegative");
        if (!(m_reg >= std::exp(3.0))) throw ConfigError("config key 'm_reg': must be >= e^3");
        if (!(tol > 0.0)) throw ConfigError("config key 'tol': must be positive");
        if (!(epsilon >= 0.0)) throw ConfigError("config key 'epsilon': must be nonnegative");
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double out;
    try {
        out = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': malformed numeric value '" + value + "'");
    }
    if (pos != value.size())
        throw ConfigError("config key '" + key + "': malformed numeric value '" + value + "'");
    return out;
}

inline int parse_int(const std::string& key, const std::string& value) {
    const double d = parse_double(key, value);
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d)
        throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
    return i;
}

inline PerturbationKind parse_perturbation(const std::string& key, const std::string& value) {
    if (value == "phase_kick") return PerturbationKind::phase_kick;
    if (value == "amplitude_scale") return PerturbationKind::amplitude_scale;
    if (value == "bump") return PerturbationKind::bump;
    if (value == "random_h1") return PerturbationKind::random_h1;
    throw ConfigError("config key '" + key +
                      "': must be one of phase_kick|amplitude_scale|bump|random_h1");
}

}  // namespace detail

// Applies one key=value assignment; rejects unknown keys by name.
inline void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                               const std::string& value) {
    using detail::parse_double;
    using detail::parse_int;
    if (key == "gamma") cfg.gamma = parse_double(key, value);
    else if (key == "omega") cfg.omega = parse_double(key, value);
    else if (key == "L") cfg.L = parse_double(key, value);
    else if (key == "n") cfg.n = parse_int(key, value);
    else if (key == "dt") cfg.dt = parse_double(key, value);
    else if (key == "T") cfg.T = parse_double(key, value);
    else if (key == "m_reg") cfg.m_reg = parse_double(key, value);
    else if (key == "tol") cfg.tol = parse_double(key, value);
    else if (key == "seed") cfg.seed = static_cast<unsigned>(parse_int(key, value));
    else if (key == "epsilon") cfg.epsilon = parse_double(key, value);
    else if (key == "perturbation") cfg.perturbation = detail::parse_perturbation(key, value);
    else if (key == "output_dir") cfg.output_dir = value;
    else throw ConfigError("unknown config key '" + key + "'");
}

// Parses key=value lines ('#' comments, blank lines allowed) on top of
// defaults; later assignments win.
inline ExperimentConfig parse_config(const std::string& text,
                                     const std::vector<std::pair<std::string, std::string>>&
                                         overrides = {}) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        apply_config_entry(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    }
    for (const auto& [key, value] : overrides) apply_config_entry(cfg, key, value);
    cfg.validate();
    return cfg;
}

}  // namespace lognls
