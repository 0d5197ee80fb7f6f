#pragma once

// Uniform 1D grid on [-L, L] with a node exactly at x = 0, plus trapezoid
// quadrature and the discrete L2 / H1 norms used everywhere else.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lognls {

using cplx = std::complex<double>;

struct Grid {
    double L = 0.0;        // half-width, domain is [-L, L]
    int n = 0;             // node count, odd, >= 3
    double h = 0.0;        // spacing 2L/(n-1)
    int origin_index = 0;  // index with x == 0

    double x(int j) const { return -L + j * h; }

    bool same_as(const Grid& other) const {
        return n == other.n && L == other.L;
    }
};

inline Grid make_grid(double L, int n) {
    if (!(L > 0.0)) throw std::invalid_argument("make_grid: L must be positive");
    if (n < 3) throw std::invalid_argument("make_grid: n must be >= 3");
    if (n % 2 == 0) throw std::invalid_argument("make_grid: n must be odd so x=0 is a node");
    Grid g;
    g.L = L;
    g.n = n;
    g.h = 2.0 * L / (n - 1);
    g.origin_index = (n - 1) / 2;
    return g;
}

struct GridFunction {
    Grid grid;
    std::vector<cplx> values;

    GridFunction() = default;
    explicit GridFunction(const Grid& g) : grid(g), values(g.n, cplx(0.0, 0.0)) {}

    int size() const { return grid.n; }
    cplx origin_value() const { return values[grid.origin_index]; }
};

template <class F>
GridFunction sample(const Grid& g, F&& f) {
    GridFunction u(g);
    for (int j = 0; j < g.n; ++j) u.values[j] = f(g.x(j));
    return u;
}

// Trapezoid rule over [-L, L]; exact for piecewise-linear data.
inline double integrate(const Grid& g, const std::vector<double>& f) {
    if (static_cast<int>(f.size()) != g.n)
        throw std::invalid_argument("integrate: sample count does not match grid");
    double sum = 0.5 * (f.front() + f.back());
    for (int j = 1; j + 1 < g.n; ++j) sum += f[j];
    return g.h * sum;
}

// Trapezoid of j -> f(j) without materializing the sample vector.
template <class F>
double integrate_nodes(const Grid& g, F&& f) {
    double sum = 0.5 * (f(0) + f(g.n - 1));
    for (int j = 1; j + 1 < g.n; ++j) sum += f(j);
    return g.h * sum;
}

inline double l2_norm_sq(const GridFunction& u) {
    return integrate_nodes(u.grid, [&](int j) { return std::norm(u.values[j]); });
}

inline double l2_norm(const GridFunction& u) { return std::sqrt(l2_norm_sq(u)); }

// Forward-difference Dirichlet form: sum_j h |u_{j+1}-u_j|^2 / h^2.
inline double h1_seminorm_sq(const GridFunction& u) {
    double sum = 0.0;
    for (int j = 0; j + 1 < u.grid.n; ++j) sum += std::norm(u.values[j + 1] - u.values[j]);
    return sum / u.grid.h;
}

inline double h1_norm_sq(const GridFunction& u) { return l2_norm_sq(u) + h1_seminorm_sq(u); }

// Real L2 pairing Re<u,v> with trapezoid weights.
inline double inner_real(const GridFunction& u, const GridFunction& v) {
    if (!u.grid.same_as(v.grid)) throw std::invalid_argument("inner_real: grid mismatch");
    return integrate_nodes(u.grid, [&](int j) {
        return std::real(u.values[j] * std::conj(v.values[j]));
    });
}

inline GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    GridFunction r(a.grid);
    for (int j = 0; j < a.grid.n; ++j) r.values[j] = a.values[j] + b.values[j];
    return r;
}

inline GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    GridFunction r(a.grid);
    for (int j = 0; j < a.grid.n; ++j) r.values[j] = a.values[j] - b.values[j];
    return r;
}

inline GridFunction operator*(cplx c, const GridFunction& a) {
    GridFunction r(a.grid);
    for (int j = 0; j < a.grid.n; ++j) r.values[j] = c * a.values[j];
    return r;
}

inline GridFunction operator*(double c, const GridFunction& a) { return cplx(c, 0.0) * a; }

}  // namespace lognls
