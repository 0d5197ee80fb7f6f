#pragma once

// Discrete delta Hamiltonian: the quadratic form t_gamma, its symmetric
// tridiagonal matrix representation (delta as -gamma/h on the origin
// diagonal), and the ground eigenpair via shifted inverse iteration.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lognls/grid.hpp"
#include "lognls/tridiag.hpp"

namespace lognls {

struct DeltaHamiltonian {
    Grid grid;
    double gamma = 0.0;
    std::vector<double> diag;     // n entries, 2/h^2 everywhere, origin gets -gamma/h
    std::vector<double> offdiag;  // n-1 entries, all -1/h^2
};

// t_gamma(u, v) = Re int u' conj(v') - gamma Re[u(0) conj(v(0))], with the
// derivative realized by forward differences.
inline double quadratic_form(const GridFunction& u, const GridFunction& v, double gamma) {
    if (!u.grid.same_as(v.grid)) throw std::invalid_argument("quadratic_form: grid mismatch");
    const double h = u.grid.h;
    double sum = 0.0;
    for (int j = 0; j + 1 < u.grid.n; ++j) {
        const cplx du = u.values[j + 1] - u.values[j];
        const cplx dv = v.values[j + 1] - v.values[j];
        sum += std::real(du * std::conj(dv));
    }
    sum /= h;
    const int o = u.grid.origin_index;
    return sum - gamma * std::real(u.values[o] * std::conj(v.values[o]));
}

inline DeltaHamiltonian build_hamiltonian(const Grid& grid, double gamma) {
    DeltaHamiltonian H;
    H.grid = grid;
    H.gamma = gamma;
    const double h2 = grid.h * grid.h;
    H.diag.assign(grid.n, 2.0 / h2);
    H.diag[grid.origin_index] -= gamma / grid.h;
    H.offdiag.assign(grid.n - 1, -1.0 / h2);
    return H;
}

// Matrix-vector product with homogeneous Dirichlet ghost values beyond the
// endpoints. On vectors vanishing at the endpoints, h * Re<Hu, u> equals
// quadratic_form(u, u, gamma).
inline GridFunction apply(const DeltaHamiltonian& H, const GridFunction& u) {
    if (!u.grid.same_as(H.grid)) throw std::invalid_argument("apply: grid mismatch");
    const int n = H.grid.n;
    GridFunction r(H.grid);
    for (int j = 0; j < n; ++j) {
        cplx acc = H.diag[j] * u.values[j];
        if (j > 0) acc += H.offdiag[j - 1] * u.values[j - 1];
        if (j + 1 < n) acc += H.offdiag[j] * u.values[j + 1];
        r.values[j] = acc;
    }
    return r;
}

struct EigenPair {
    double lambda = 0.0;
    GridFunction vec;       // unit discrete-L2 eigenvector, Dirichlet endpoints
    int iterations = 0;
    double residual = 0.0;  // ||Hv - lambda v|| at convergence
};

// Smallest eigenvalue by inverse iteration with a fixed shift placed below
// the target (-gamma^2/4 - 0.1 for gamma > 0, -0.1 otherwise); deterministic
// start vector e^{-|x|}.
inline EigenPair ground_eigenpair(const DeltaHamiltonian& H,
                                  double residual_tol = 1e-10,
                                  int max_iter = 20000) {
    const Grid& g = H.grid;
    const int ni = g.n - 2;
    const double shift = (H.gamma > 0.0) ? (-H.gamma * H.gamma / 4.0 - 0.1) : -0.1;

    std::vector<double> diag_s(ni), off(ni - 1);
    for (int i = 0; i < ni; ++i) diag_s[i] = H.diag[i + 1] - shift;
    for (int i = 0; i + 1 < ni; ++i) off[i] = H.offdiag[i + 1];

    std::vector<double> v(ni);
    for (int i = 0; i < ni; ++i) v[i] = std::exp(-std::abs(g.x(i + 1)));

    auto normalize = [&](std::vector<double>& w) {
        double s = 0.0;
        for (double val : w) s += val * val;
        s = std::sqrt(g.h * s);
        for (double& val : w) val /= s;
        return s;
    };
    auto matvec = [&](const std::vector<double>& w, std::vector<double>& out) {
        for (int i = 0; i < ni; ++i) {
            double acc = H.diag[i + 1] * w[i];
            if (i > 0) acc += H.offdiag[i] * w[i - 1];
            if (i + 1 < ni) acc += H.offdiag[i + 1] * w[i + 1];
            out[i] = acc;
        }
    };

    normalize(v);
    std::vector<double> Hv(ni);
    double lambda = 0.0, res = 0.0;
    int it = 0;
    for (; it < max_iter; ++it) {
        v = tridiag_solve(off, diag_s, off, v);
        normalize(v);
        matvec(v, Hv);
        double num = 0.0;
        for (int i = 0; i < ni; ++i) num += Hv[i] * v[i];
        lambda = g.h * num;  // v has unit discrete L2 norm
        res = 0.0;
        for (int i = 0; i < ni; ++i) {
            const double r = Hv[i] - lambda * v[i];
            res += r * r;
        }
        res = std::sqrt(g.h * res);
        if (res <= residual_tol) break;
    }
    if (res > residual_tol)
        throw std::runtime_error("ground_eigenpair: inverse iteration did not converge");

    // Fix the overall sign so the largest component is positive.
    double big = 0.0;
    for (double val : v)
        if (std::abs(val) > std::abs(big)) big = val;
    if (big < 0.0)
        for (double& val : v) val = -val;

    EigenPair out;
    out.lambda = lambda;
    out.vec = GridFunction(g);
    for (int i = 0; i < ni; ++i) out.vec.values[i + 1] = v[i];
    out.iterations = it + 1;
    out.residual = res;
    return out;
}

}  // namespace lognls
