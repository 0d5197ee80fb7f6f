#pragma once

// Ground-state computation: projected descent on the Nehari manifold.
// Every iterate is pulled back onto {I = 0} by the exact rescaling
// lambda = exp(I/(2||u||^2)), so the constraint never drifts; descent uses
// Armijo backtracking on S with the step reset each iteration.

#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "lognls/functionals.hpp"
#include "lognls/grid.hpp"
#include "lognls/hamiltonian.hpp"
#include "lognls/tridiag.hpp"

namespace lognls {

struct SolverSettings {
    double step = 0.0;  // initial descent step; 0 picks a default per mode
    double tol = 1e-8;  // stop when ||gradient_S||_{L2} <= tol
    int max_iter = 50000;
    std::optional<bool> symmetrize;  // default: true iff gamma == 0
    unsigned seed = 1;               // randomized restart (0 keeps the Gaussian start)
    int restarts = 0;
    // Apply (H_gamma + kappa)^{-1} to the gradient. Plain L2 descent needs
    // O(1/h^2) iterations to push the residual to tol; the solve costs one
    // tridiagonal sweep and removes that mesh dependence.
    bool precondition = true;
};

struct GroundStateResult {
    GridFunction profile;
    double d_estimate = 0.0;
    int iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
    double mass_center = 0.0;   // int x|u|^2 / int |u|^2
    bool drift_warning = false; // gamma < 0 only: |mass_center| > 0.5
};

namespace detail {

inline double residual_norm(const GridFunction& grad) {
    return std::sqrt(l2_norm_sq(grad));
}

inline void symmetrize_even(GridFunction& u) {
    const int n = u.grid.n;
    for (int j = 0; j < n / 2; ++j) {
        const cplx avg = 0.5 * (u.values[j] + u.values[n - 1 - j]);
        u.values[j] = avg;
        u.values[n - 1 - j] = avg;
    }
}

inline double mass_center_of(const GridFunction& u) {
    const double l2 = l2_norm_sq(u);
    if (l2 == 0.0) return 0.0;
    const double first = integrate_nodes(u.grid, [&](int j) {
        return u.grid.x(j) * std::norm(u.values[j]);
    });
    return first / l2;
}

}  // namespace detail

inline GroundStateResult solve_ground_state(const PhysParams& p, const Grid& grid,
                                            const SolverSettings& settings,
                                            std::optional<GridFunction> initial = std::nullopt) {
    if (!(settings.tol > 0.0)) throw std::invalid_argument("solve_ground_state: tol must be positive");
    if (settings.max_iter < 1) throw std::invalid_argument("solve_ground_state: max_iter must be >= 1");
    const bool symmetrize = settings.symmetrize.value_or(p.gamma == 0.0);
    const double step0 = settings.step > 0.0
                             ? settings.step
                             : (settings.precondition ? 1.0 : 0.45 * grid.h * grid.h);

    GridFunction u = initial ? *initial
                             : sample(grid, [](double x) { return cplx(std::exp(-0.5 * x * x), 0.0); });
    if (settings.seed != 0 && settings.restarts > 0) {
        // Seeded multiplicative jitter of the starting guess, used to probe
        // the basin; the converged answer must not depend on it.
        std::mt19937 rng(settings.seed);
        std::uniform_real_distribution<double> amp(0.5, 1.5);
        for (auto& v : u.values) v *= amp(rng);
    }
    u.values.front() = u.values.back() = cplx(0, 0);
    if (symmetrize) detail::symmetrize_even(u);
    u = nehari_rescale(u, p).second;

    // Preconditioner (H_gamma + kappa + D_u)^{-1} on interior nodes, where
    // D_u freezes the local stiffness of the log term: near |u| = 0 the
    // gradient coefficient grows like |Log|u|^2|, and a fixed explicit step
    // would limit-cycle on the tails without this diagonal.
    const DeltaHamiltonian H = build_hamiltonian(grid, p.gamma);
    const int ni = grid.n - 2;
    const double kappa = 1.0 + std::abs(p.omega) + (p.gamma > 0.0 ? 0.25 * p.gamma * p.gamma : 0.0);
    std::vector<cplx> pre_diag(ni), pre_off(ni - 1);
    for (int i = 0; i + 1 < ni; ++i) pre_off[i] = H.offdiag[i + 1];

    auto descent_direction = [&](const GridFunction& cur, const GridFunction& grad) {
        if (!settings.precondition) return grad;
        for (int i = 0; i < ni; ++i) {
            const double s = std::abs(cur.values[i + 1]);
            const double stiff = (s > 1e-170)
                                     ? std::max(0.0, p.omega - 2.0 * std::log(s) - 2.0)
                                     : 800.0;
            pre_diag[i] = H.diag[i + 1] + kappa + stiff;
        }
        std::vector<cplx> rhs(grad.values.begin() + 1, grad.values.end() - 1);
        const std::vector<cplx> sol = tridiag_solve(pre_off, pre_diag, pre_off, rhs);
        GridFunction dir(grid);
        for (int i = 0; i < ni; ++i) dir.values[i + 1] = sol[i];
        return dir;
    };

    GroundStateResult out;
    double S_cur = action_S(u, p);
    double res = 0.0;
    int it = 0;
    for (; it < settings.max_iter; ++it) {
        const GridFunction grad = gradient_S(u, p);
        res = detail::residual_norm(grad);
        if (res <= settings.tol) {
            out.converged = true;
            break;
        }
        const GridFunction dir = descent_direction(u, grad);
        double s = step0;
        bool accepted = false;
        // near the minimum the true decrease ~ res^2 drops below the
        // evaluation noise of S (quadrature sums over n nodes), so allow
        // noise-scale slack in the acceptance test
        const double slack = 1e-15 * grid.n * std::max(1.0, std::abs(S_cur));
        for (int bt = 0; bt < 60; ++bt) {
            GridFunction w = u - cplx(s, 0.0) * dir;
            if (symmetrize) detail::symmetrize_even(w);
            w = nehari_rescale(w, p).second;
            const double S_new = action_S(w, p);
            if (S_new <= S_cur + slack) {
                u = std::move(w);
                S_cur = std::min(S_cur, S_new);
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if (!accepted) break;  // step collapsed; report non-convergence
    }

    // Global phase tie-break: u(0) real positive.
    const cplx uc = u.origin_value();
    if (std::abs(uc) > 0.0) {
        const cplx rot = std::polar(1.0, -std::arg(uc));
        for (auto& v : u.values) v *= rot;
    }

    out.profile = u;
    out.d_estimate = action_S(u, p);
    out.iterations = it;
    out.final_residual = res;
    out.mass_center = detail::mass_center_of(u);
    out.drift_warning = (p.gamma < 0.0) && (std::abs(out.mass_center) > 0.5);
    return out;
}

struct SweepCell {
    double omega = 0.0;
    double gamma = 0.0;
    double d_estimate = 0.0;
    double d_closed_form = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Batch driver over (omega, gamma) pairs; each cell is warm-started from the
// previous converged profile along the gamma direction.
inline std::vector<SweepCell> continuation_sweep(const std::vector<double>& omegas,
                                                 const std::vector<double>& gammas,
                                                 const Grid& grid,
                                                 const SolverSettings& settings) {
    for (double g : gammas)
        if (!(g > 0.0)) throw std::invalid_argument("continuation_sweep: gamma entries must be positive");
    std::vector<SweepCell> table;
    for (double omega : omegas) {
        std::optional<GridFunction> warm;
        for (double gamma : gammas) {
            PhysParams p{gamma, omega, std::nullopt};
            const GroundStateResult r = solve_ground_state(p, grid, settings, warm);
            SweepCell cell;
            cell.omega = omega;
            cell.gamma = gamma;
            cell.d_estimate = r.d_estimate;
            cell.d_closed_form = 0.5 * std::sqrt(M_PI) * std::exp(omega + 1.0) * std::erfc(0.5 * gamma);
            cell.iterations = r.iterations;
            cell.converged = r.converged;
            table.push_back(cell);
            if (r.converged) warm = r.profile;
        }
    }
    return table;
}

}  // namespace lognls
