#pragma once

// Energy E, action S_{omega,gamma}, Nehari functional I_{omega,gamma}, the
// L2 gradient of S, the exact Nehari rescaling, and the closed-form
// peak-Gausson reference profile with its derived constants.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "lognls/grid.hpp"
#include "lognls/hamiltonian.hpp"
#include "lognls/orlicz.hpp"

namespace lognls {

struct PhysParams {
    double gamma = 1.0;
    double omega = 1.0;
    std::optional<RegLevel> reg;
};

// E(u) = 1/2 ||u'||^2 - gamma/2 |u(0)|^2 - 1/2 int |u|^2 Log|u|^2.
// With a regularization level the entropy term is replaced by the exact
// invariant of the regularized flow, normalized to agree with E whenever
// range(|u|) stays inside [1/m, m]:
//   E_m(u) = 1/2 t_gamma(u) - int V_m(|u|) - 1/2 ||u||^2,
// where V_m' (as an L2 gradient) is the regularized nonlinearity f_m.
inline double energy(const GridFunction& u, const PhysParams& p) {
    const double quad = 0.5 * h1_seminorm_sq(u)
                      - 0.5 * p.gamma * std::norm(u.origin_value());
    if (!p.reg) return quad - 0.5 * entropy_integral(u);
    const RegLevel& reg = *p.reg;
    const double pot = integrate_nodes(u.grid, [&](int j) {
        return nonlinearity_potential(std::abs(u.values[j]), reg);
    });
    return quad - pot - 0.5 * l2_norm_sq(u);
}

inline double energy_unregularized(const GridFunction& u, const PhysParams& p) {
    return 0.5 * h1_seminorm_sq(u) - 0.5 * p.gamma * std::norm(u.origin_value())
         - 0.5 * entropy_integral(u);
}

// S = E + (omega+1)/2 ||u||^2 and I = 2E + omega ||u||^2, both built on the
// unregularized E so the algebraic identities hold bit-exactly.
inline double action_S(const GridFunction& u, const PhysParams& p) {
    return energy_unregularized(u, p) + 0.5 * (p.omega + 1.0) * l2_norm_sq(u);
}

inline double nehari_I(const GridFunction& u, const PhysParams& p) {
    return 2.0 * energy_unregularized(u, p) + p.omega * l2_norm_sq(u);
}

// L2-Riesz representative of S'(u): H_gamma u + omega u - u Log|u|^2 (or its
// regularized version). Endpoints are Dirichlet data and get gradient 0.
inline GridFunction gradient_S(const GridFunction& u, const PhysParams& p) {
    const DeltaHamiltonian H = build_hamiltonian(u.grid, p.gamma);
    GridFunction grad = apply(H, u);
    for (int j = 1; j + 1 < u.grid.n; ++j)
        grad.values[j] += p.omega * u.values[j] - pointwise_nonlinearity(u.values[j], p.reg);
    grad.values[0] = grad.values[u.grid.n - 1] = cplx(0, 0);
    return grad;
}

// lambda = exp(I(u) / (2||u||^2)); I(lambda u) = 0 exactly in the
// unregularized functional.
inline std::pair<double, GridFunction> nehari_rescale(const GridFunction& u, const PhysParams& p) {
    const double l2 = l2_norm_sq(u);
    if (l2 == 0.0) throw std::invalid_argument("nehari_rescale: u must be nonzero");
    const double lambda = std::exp(nehari_I(u, p) / (2.0 * l2));
    return {lambda, lambda * u};
}

// phi_{omega,gamma}(x) = e^{(omega+1)/2} e^{-(|x|+gamma/2)^2/2} and its
// derived constants. mass_quad is the trapezoid value of ||phi||^2 on the
// grid, kept alongside the erfc closed form as a cross-check.
struct GaussonReference {
    double gamma = 0.0;
    double omega = 0.0;
    double amplitude = 0.0;     // e^{(omega+1)/2}
    double center_value = 0.0;  // e^{(omega+1)/2} e^{-gamma^2/8}
    double mass = 0.0;          // sqrt(pi) e^{omega+1} erfc(gamma/2)
    double mass_quad = 0.0;
    double d_value = 0.0;       // mass / 2

    double profile(double x) const {
        const double r = std::abs(x) + 0.5 * gamma;
        return amplitude * std::exp(-0.5 * r * r);
    }
};

inline GaussonReference gausson_reference(const PhysParams& p, const Grid& grid) {
    GaussonReference ref;
    ref.gamma = p.gamma;
    ref.omega = p.omega;
    ref.amplitude = std::exp(0.5 * (p.omega + 1.0));
    ref.center_value = ref.amplitude * std::exp(-p.gamma * p.gamma / 8.0);
    ref.mass = std::sqrt(M_PI) * std::exp(p.omega + 1.0) * std::erfc(0.5 * p.gamma);
    ref.mass_quad = integrate_nodes(grid, [&](int j) {
        const double v = ref.profile(grid.x(j));
        return v * v;
    });
    ref.d_value = 0.5 * ref.mass;
    return ref;
}

inline GridFunction gausson_profile(const PhysParams& p, const Grid& grid) {
    const GaussonReference ref = gausson_reference(p, grid);
    return sample(grid, [&](double x) { return cplx(ref.profile(x), 0.0); });
}

struct StationaryResidual {
    double interior_max = 0.0;  // max |-D2 u + omega u - u Log|u|^2| off the origin
    double jump_defect = 0.0;   // |(u'(0+) - u'(0-)) + gamma u(0)| by one-sided differences
};

// Residual of the stationary equation, excluding the origin and its two
// neighbors where the kink caps the order.
inline StationaryResidual pointwise_residual(const GridFunction& u, const PhysParams& p) {
    const Grid& g = u.grid;
    const double h2 = g.h * g.h;
    const int o = g.origin_index;
    StationaryResidual out;
    for (int j = 1; j + 1 < g.n; ++j) {
        if (j >= o - 1 && j <= o + 1) continue;
        const cplx d2 = (u.values[j + 1] - 2.0 * u.values[j] + u.values[j - 1]) / h2;
        const cplx r = -d2 + p.omega * u.values[j] - pointwise_nonlinearity(u.values[j]);
        out.interior_max = std::max(out.interior_max, std::abs(r));
    }
    const cplx right = (u.values[o + 1] - u.values[o]) / g.h;
    const cplx left = (u.values[o] - u.values[o - 1]) / g.h;
    out.jump_defect = std::abs(right - left + p.gamma * u.values[o]);
    return out;
}

}  // namespace lognls
