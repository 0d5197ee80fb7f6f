#pragma once

// Orbital-stability harness: the modulated distance inf_theta ||u - e^{i
// theta} phi||_W and perturbation experiments around the peak-Gausson.

#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "lognls/dynamics.hpp"
#include "lognls/functionals.hpp"
#include "lognls/grid.hpp"
#include "lognls/orlicz.hpp"

namespace lognls {

enum class PerturbationKind { phase_kick, amplitude_scale, bump, random_h1 };

inline std::string to_string(PerturbationKind k) {
    switch (k) {
        case PerturbationKind::phase_kick: return "phase_kick";
        case PerturbationKind::amplitude_scale: return "amplitude_scale";
        case PerturbationKind::bump: return "bump";
        case PerturbationKind::random_h1: return "random_h1";
    }
    return "unknown";
}

struct PerturbationSpec {
    PerturbationKind kind = PerturbationKind::random_h1;
    double epsilon = 1e-3;
    unsigned seed = 1;
    double bump_center = 2.0;
    double bump_width = 1.0;
};

struct DistancePoint {
    double t = 0.0;
    double theta = 0.0;
    double dist = 0.0;
};

struct StabilityReport {
    double epsilon = 0.0;
    double sup_distance = 0.0;
    double ratio = 0.0;  // sup_distance / epsilon
    double noise_floor = 0.0;
    std::vector<DistancePoint> distance_trace;
    bool conservation_violated = false;
    bool exploratory = false;  // gamma <= 0: stability open in W
};

struct ModulatedDistance {
    double theta = 0.0;
    double dist = 0.0;
};

// Minimizes theta -> ||u - e^{i theta} phi||_W over [0, 2pi): 64-point coarse
// scan seeded additionally at the L2-optimal phase, then golden-section
// refinement to width 1e-10.
inline ModulatedDistance modulated_distance(const GridFunction& u, const GridFunction& phi) {
    if (!u.grid.same_as(phi.grid)) throw std::invalid_argument("modulated_distance: grid mismatch");

    auto objective = [&](double theta) {
        return w_norm(u - std::polar(1.0, theta) * phi);
    };

    const int coarse = 64;
    double best_theta = 0.0;
    double best_val = objective(0.0);
    for (int i = 1; i < coarse; ++i) {
        const double th = 2.0 * M_PI * i / coarse;
        const double v = objective(th);
        if (v < best_val) { best_val = v; best_theta = th; }
    }
    // L2-optimal phase arg(<u, phi>) as an extra seed.
    cplx ip(0, 0);
    for (int j = 0; j < u.grid.n; ++j) ip += u.values[j] * std::conj(phi.values[j]);
    if (std::abs(ip) > 0.0) {
        const double th = std::arg(ip);
        const double v = objective(th);
        if (v < best_val) { best_val = v; best_theta = th; }
    }

    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = best_theta - 2.0 * M_PI / coarse;
    double b = best_theta + 2.0 * M_PI / coarse;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = objective(c), fd = objective(d);
    while (b - a > 1e-10) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a);
            fc = objective(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a);
            fd = objective(d);
        }
    }
    ModulatedDistance out;
    out.dist = std::min(fc, fd);
    out.theta = std::fmod((fc < fd ? c : d) + 4.0 * M_PI, 2.0 * M_PI);
    if (best_val < out.dist) {  // refinement can only improve the coarse seed
        out.dist = best_val;
        out.theta = std::fmod(best_theta + 4.0 * M_PI, 2.0 * M_PI);
    }
    return out;
}

// Builds the perturbation delta with ||delta||_W = 1 (phase/amplitude kinds
// are handled exactly inside build_initial_state instead).
inline GridFunction perturbation_shape(const PerturbationSpec& spec, const Grid& grid) {
    if (spec.kind == PerturbationKind::bump) {
        return sample(grid, [&](double x) {
            const double r = (x - spec.bump_center) / spec.bump_width;
            return cplx(std::exp(-0.5 * r * r), 0.0);
        });
    }
    // random_h1: seeded low-frequency Fourier field under a Gaussian envelope
    std::mt19937 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int modes = 16;
    std::vector<cplx> amp_cos(modes), amp_sin(modes);
    for (int k = 0; k < modes; ++k) {
        const double decay = 1.0 / ((k + 1) * (k + 1));
        amp_cos[k] = cplx(gauss(rng), gauss(rng)) * decay;
        amp_sin[k] = cplx(gauss(rng), gauss(rng)) * decay;
    }
    return sample(grid, [&](double x) {
        cplx acc(0, 0);
        for (int k = 0; k < modes; ++k) {
            const double ph = (k + 1) * M_PI * x / grid.L;
            acc += amp_cos[k] * std::cos(ph) + amp_sin[k] * std::sin(ph);
        }
        return acc * std::exp(-x * x / 8.0);
    });
}

// u0 = phi + perturbation with ||u0 - phi||_W = epsilon exactly.
inline GridFunction build_initial_state(const GridFunction& phi, const PerturbationSpec& spec) {
    const double wphi = w_norm(phi);
    switch (spec.kind) {
        case PerturbationKind::phase_kick: {
            const double ratio = std::min(1.0, spec.epsilon / (2.0 * wphi));
            const double alpha = 2.0 * std::asin(ratio);
            return std::polar(1.0, alpha) * phi;
        }
        case PerturbationKind::amplitude_scale:
            return (1.0 + spec.epsilon / wphi) * phi;
        case PerturbationKind::bump:
        case PerturbationKind::random_h1: {
            GridFunction delta = perturbation_shape(spec, phi.grid);
            const double wd = w_norm(delta);
            if (wd == 0.0) throw std::runtime_error("build_initial_state: degenerate perturbation");
            return phi + (spec.epsilon / wd) * delta;
        }
    }
    throw std::logic_error("build_initial_state: unreachable");
}

// Sup over recorded times of the modulated distance for the unperturbed
// profile; separates discretization drift from dynamical instability.
inline double measure_noise_floor(const PhysParams& p, const Grid& grid,
                                  const IntegratorConfig& cfg) {
    const GridFunction phi = gausson_profile(p, grid);
    const DeltaHamiltonian H = build_hamiltonian(grid, p.gamma);
    detail::CrankNicolson cn(H, cfg.dt);
    GridFunction u = phi;
    const int steps = static_cast<int>(std::llround(cfg.T / std::abs(cfg.dt)));
    double floor = 0.0;
    for (int k = 1; k <= steps; ++k) {
        u = nonlinear_phase_step(u, 0.5 * cfg.dt, cfg.reg);
        cn.step(u);
        u = nonlinear_phase_step(u, 0.5 * cfg.dt, cfg.reg);
        if (k % cfg.record_every == 0 || k == steps)
            floor = std::max(floor, modulated_distance(u, phi).dist);
    }
    return floor;
}

inline StabilityReport stability_experiment(const PhysParams& p, const Grid& grid,
                                            const PerturbationSpec& spec,
                                            const IntegratorConfig& cfg,
                                            std::optional<double> known_noise_floor = std::nullopt) {
    cfg.validate();
    StabilityReport report;
    report.epsilon = spec.epsilon;
    report.exploratory = !(p.gamma > 0.0);
    report.noise_floor = known_noise_floor ? *known_noise_floor
                                           : measure_noise_floor(p, grid, cfg);

    const GridFunction phi = gausson_profile(p, grid);
    GridFunction u = build_initial_state(phi, spec);

    const DeltaHamiltonian H = build_hamiltonian(grid, p.gamma);
    detail::CrankNicolson cn(H, cfg.dt);
    PhysParams preg = p;
    preg.reg = cfg.reg;

    const double charge0 = l2_norm_sq(u);
    const double energy0 = energy(u, preg);
    const double energy_scale = std::max(std::abs(energy0), 1.0);

    auto record = [&](double t) {
        const ModulatedDistance md = modulated_distance(u, phi);
        report.distance_trace.push_back({t, md.theta, md.dist});
        report.sup_distance = std::max(report.sup_distance, md.dist);
        if (std::abs(l2_norm_sq(u) - charge0) > 1e-8 * charge0 ||
            std::abs(energy(u, preg) - energy0) > 5e-4 * energy_scale)
            report.conservation_violated = true;
    };

    record(0.0);
    const int steps = static_cast<int>(std::llround(cfg.T / std::abs(cfg.dt)));
    for (int k = 1; k <= steps; ++k) {
        u = nonlinear_phase_step(u, 0.5 * cfg.dt, cfg.reg);
        cn.step(u);
        u = nonlinear_phase_step(u, 0.5 * cfg.dt, cfg.reg);
        if (k % cfg.record_every == 0 || k == steps) record(k * cfg.dt);
    }
    report.ratio = spec.epsilon > 0.0 ? report.sup_distance / spec.epsilon : 0.0;
    return report;
}

}  // namespace lognls
