#pragma once

// Entropy machinery for the logarithmic nonlinearity: the convex split
// |z|^2 Log|z|^2 = B(|z|) - A(|z|), the m-regularized nonlinearity and its
// potentials, the Luxemburg norm of L^A, the W norm, and the inequality
// gap evaluators (log-Sobolev, trace bound).

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "lognls/grid.hpp"

namespace lognls {

// Branch point of A and the fixed constants of its outer branch.
inline constexpr double kE3 = 0.049787068367863944;  // e^-3
inline constexpr double kE6 = 0.0024787521766663585; // e^-6

// Below this amplitude all entropy densities are taken at their limit 0.
inline constexpr double kAmplitudeFloor = 1e-300;

struct EntropySplit {
    double A_val = 0.0;
    double B_val = 0.0;
    double F_val = 0.0;  // == B_val - A_val bit-exactly
};

// A(s) = -s^2 Log(s^2) on [0, e^-3], 3s^2 + 4e^-3 s - e^-6 beyond.
inline double entropy_A(double s) {
    if (s < kAmplitudeFloor) return 0.0;
    if (s <= kE3) return -2.0 * s * s * std::log(s);
    return 3.0 * s * s + 4.0 * kE3 * s - kE6;
}

// F(s) = s^2 Log(s^2) with F(0) = 0 by limit.
inline double entropy_F(double s) {
    if (s < kAmplitudeFloor) return 0.0;
    return 2.0 * s * s * std::log(s);
}

inline double entropy_B(double s) {
    if (s <= kE3) return 0.0;  // F = -A exactly on the inner branch
    return entropy_F(s) + entropy_A(s);
}

inline EntropySplit entropy_split(double s) {
    if (s < 0.0) throw std::invalid_argument("entropy_split: s must be nonnegative");
    EntropySplit out;
    out.A_val = entropy_A(s);
    out.B_val = entropy_B(s);
    out.F_val = out.B_val - out.A_val;
    return out;
}

struct RegLevel {
    double m;
    explicit RegLevel(double level) : m(level) {
        if (!(m >= std::exp(3.0)))
            throw std::invalid_argument("RegLevel: m must be >= e^3");
    }
};

// Radial factors a(s) = A(s)/s and b(s) = B(s)/s for real s > 0.
inline double radial_a(double s) {
    if (s < kAmplitudeFloor) return 0.0;
    if (s <= kE3) return -2.0 * s * std::log(s);
    return 3.0 * s + 4.0 * kE3 - kE6 / s;
}

inline double radial_b(double s) {
    if (s <= kE3) return 0.0;
    return 2.0 * s * std::log(s) + 3.0 * s + 4.0 * kE3 - kE6 / s;
}

inline double radial_a_m(double s, const RegLevel& reg) {
    if (s <= 1.0 / reg.m) return 2.0 * s * std::log(reg.m);  // m s a(1/m)
    return radial_a(s);
}

inline double radial_b_m(double s, const RegLevel& reg) {
    if (s <= reg.m) return radial_b(s);
    return s * radial_b(reg.m) / reg.m;
}

// f_m(z) = z g_m(|z|): the logarithm clamped at |z| = 1/m and modified
// above |z| = m. On [1/m, m] it is exactly Log|z|^2.
inline double log_multiplier(double s, const RegLevel& reg) {
    const double m = reg.m;
    if (s <= 1.0 / m) return -2.0 * std::log(m);
    if (s <= m) return 2.0 * std::log(s);
    return 2.0 * std::log(m) + 4.0 * kE3 * (1.0 / m - 1.0 / s) - kE6 * (1.0 / (m * m) - 1.0 / (s * s));
}

inline cplx pointwise_nonlinearity(cplx z, const std::optional<RegLevel>& reg = std::nullopt) {
    const double s = std::abs(z);
    if (reg) return z * log_multiplier(s, *reg);
    if (s < kAmplitudeFloor) return cplx(0.0, 0.0);
    return z * (2.0 * std::log(s));
}

namespace detail {

// int_0^s a_m(t) dt in closed form (piecewise polynomial / t^2 log t).
inline double antideriv_a_m(double s, const RegLevel& reg) {
    const double m = reg.m;
    const double inv_m = 1.0 / m;
    if (s <= inv_m) return s * s * std::log(m);
    const double halfm2 = 0.5 / (m * m);
    if (s <= kE3) {
        if (s < kAmplitudeFloor) return 0.0;
        return -s * s * std::log(s) + 0.5 * s * s - halfm2;
    }
    return 1.5 * s * s + 4.0 * kE3 * s - kE6 * std::log(s) - 5.0 * kE6 - halfm2;
}

// int_0^s b_m(t) dt in closed form.
inline double antideriv_b_m(double s, const RegLevel& reg) {
    const double m = reg.m;
    if (s <= kE3) return 0.0;
    if (s <= m) return s * s * std::log(s) + s * s + 4.0 * kE3 * s - kE6 * std::log(s) - 5.0 * kE6;
    const double at_m = m * m * std::log(m) + m * m + 4.0 * kE3 * m - kE6 * std::log(m) - 5.0 * kE6;
    return at_m + radial_b(m) * (s * s - m * m) / (2.0 * m);
}

}  // namespace detail

// (Phi_m, Psi_m) = (1/2 int_0^s a_m, 1/2 int_0^s b_m).
inline std::pair<double, double> reg_potentials(double s, const RegLevel& reg) {
    if (s < 0.0) throw std::invalid_argument("reg_potentials: s must be nonnegative");
    return {0.5 * detail::antideriv_a_m(s, reg), 0.5 * detail::antideriv_b_m(s, reg)};
}

// V_m(s) = int_0^s (b_m - a_m)(t) dt, the potential whose L2 gradient is
// f_m. Equals 1/2 s^2 Log s^2 - s^2/2 + 1/(2m^2) on the unclamped band.
inline double nonlinearity_potential(double s, const RegLevel& reg) {
    const double m = reg.m;
    if (s <= 1.0 / m) return -s * s * std::log(m);
    const double half_invm2 = 0.5 / (m * m);
    if (s <= m) {
        if (s < kAmplitudeFloor) return half_invm2;
        return s * s * std::log(s) - 0.5 * s * s + half_invm2;
    }
    const double at_m = m * m * std::log(m) - 0.5 * m * m + half_invm2;
    const double c0 = 2.0 * std::log(m) + 4.0 * kE3 / m - kE6 / (m * m);
    return at_m + 0.5 * c0 * (s * s - m * m) - 4.0 * kE3 * (s - m) + kE6 * std::log(s / m);
}

// int |u|^2 Log|u|^2 dx, evaluated through the B - A split.
inline double entropy_integral(const GridFunction& u) {
    const double intA = integrate_nodes(u.grid, [&](int j) { return entropy_A(std::abs(u.values[j])); });
    const double intB = integrate_nodes(u.grid, [&](int j) { return entropy_B(std::abs(u.values[j])); });
    return intB - intA;
}

inline double entropy_A_integral(const GridFunction& u) {
    return integrate_nodes(u.grid, [&](int j) { return entropy_A(std::abs(u.values[j])); });
}

inline double entropy_B_integral(const GridFunction& u) {
    return integrate_nodes(u.grid, [&](int j) { return entropy_B(std::abs(u.values[j])); });
}

// Luxemburg norm inf{k > 0 : int A(|u|/k) <= 1} by bracketed bisection.
inline double luxemburg_norm(const GridFunction& u) {
    double smax = 0.0;
    for (const cplx& v : u.values) smax = std::max(smax, std::abs(v));
    if (smax == 0.0) return 0.0;

    auto constraint = [&](double k) {
        return integrate_nodes(u.grid, [&](int j) { return entropy_A(std::abs(u.values[j]) / k); });
    };

    double k_lo = 1e-30;
    double k_hi = 1.0;
    int guard = 0;
    while (constraint(k_hi) > 1.0) {
        k_hi *= 2.0;
        if (++guard > 2100) throw std::runtime_error("luxemburg_norm: bracket expansion failed");
    }
    for (int it = 0; it < 220 && (k_hi - k_lo) > 1e-10 * k_hi; ++it) {
        const double k_mid = 0.5 * (k_lo + k_hi);
        if (constraint(k_mid) <= 1.0)
            k_hi = k_mid;
        else
            k_lo = k_mid;
    }
    return k_hi;
}

// ||u||_W = ||u||_{H1} + ||u||_{L^A}
inline double w_norm(const GridFunction& u) {
    return std::sqrt(h1_norm_sq(u)) + luxemburg_norm(u);
}

// RHS - LHS of the logarithmic Sobolev inequality; >= 0 for every alpha > 0.
inline double log_sobolev_gap(const GridFunction& f, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("log_sobolev_gap: alpha must be positive");
    const double l2 = l2_norm_sq(f);
    if (l2 == 0.0) throw std::invalid_argument("log_sobolev_gap: f must be nonzero");
    const double rhs = (alpha * alpha / M_PI) * h1_seminorm_sq(f)
                     + (std::log(l2) - (1.0 + std::log(alpha))) * l2;
    return rhs - entropy_integral(f);
}

// gamma^2 ||u||^2 + ||u'||^2 - 2 gamma |u(0)|^2, nonnegative in the continuum.
inline double trace_bound_gap(const GridFunction& u, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("trace_bound_gap: gamma must be positive");
    return gamma * gamma * l2_norm_sq(u) + h1_seminorm_sq(u)
         - 2.0 * gamma * std::norm(u.origin_value());
}

}  // namespace lognls
