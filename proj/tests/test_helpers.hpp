#pragma once

#include <cmath>
#include <random>

#include "lognls/grid.hpp"

namespace lognls::testing {

// Smooth random field: a few low Fourier modes under a Gaussian envelope so
// samples decay toward the box edges like the profiles of interest.
inline GridFunction random_smooth(const Grid& g, unsigned seed, bool complex_valued = true,
                                  double amplitude = 1.0) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int modes = 8;
    std::vector<cplx> ac(modes), as(modes);
    for (int k = 0; k < modes; ++k) {
        const double decay = 1.0 / ((k + 1) * (k + 1));
        ac[k] = cplx(gauss(rng), complex_valued ? gauss(rng) : 0.0) * decay;
        as[k] = cplx(gauss(rng), complex_valued ? gauss(rng) : 0.0) * decay;
    }
    return sample(g, [&](double x) {
        cplx acc(0, 0);
        for (int k = 0; k < modes; ++k) {
            const double ph = (k + 1) * M_PI * x / g.L;
            acc += ac[k] * std::cos(ph) + as[k] * std::sin(ph);
        }
        return amplitude * acc * std::exp(-x * x / 8.0);
    });
}

// Random values without smoothness, Dirichlet endpoints.
inline GridFunction random_rough(const Grid& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    GridFunction u(g);
    for (int j = 1; j + 1 < g.n; ++j) u.values[j] = cplx(uni(rng), uni(rng));
    return u;
}

}  // namespace lognls::testing
