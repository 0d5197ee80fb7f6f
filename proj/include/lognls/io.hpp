#pragma once

// Deterministic artifact output: 17-significant-digit numbers (round-trip
// exact for doubles), CSV with the resolved config embedded as comment
// lines, and the canonical config.resolved echo.

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lognls/config.hpp"

namespace lognls {

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::vector<std::pair<std::string, std::string>> config_items(const ExperimentConfig& c) {
    return {
        {"gamma", format_g17(c.gamma)},
        {"omega", format_g17(c.omega)},
        {"L", format_g17(c.L)},
        {"n", std::to_string(c.n)},
        {"dt", format_g17(c.dt)},
        {"T", format_g17(c.T)},
        {"m_reg", format_g17(c.m_reg)},
        {"tol", format_g17(c.tol)},
        {"seed", std::to_string(c.seed)},
        {"epsilon", format_g17(c.epsilon)},
        {"perturbation", to_string(c.perturbation)},
        {"output_dir", c.output_dir},
    };
}

inline std::string resolved_config_text(const ExperimentConfig& c) {
    std::string out;
    for (const auto& [k, v] : config_items(c)) out += k + " = " + v + "\n";
    return out;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << text;
}

class CsvWriter {
  public:
    CsvWriter(const std::string& path, const ExperimentConfig& cfg,
              const std::vector<std::string>& columns)
        : f_(path, std::ios::binary) {
        if (!f_) throw std::runtime_error("cannot open for writing: " + path);
        for (const auto& [k, v] : config_items(cfg)) f_ << "# " << k << " = " << v << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            f_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            f_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
    }

  private:
    std::ofstream f_;
};

}  // namespace lognls
