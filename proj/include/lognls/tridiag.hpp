#pragma once

// Thomas algorithm for tridiagonal systems, real and complex flavors.

#include <complex>
#include <stdexcept>
#include <vector>

namespace lognls {

// Solves the system with sub/super diagonal `off` (constant offsets are the
// only case we need variable storage for anyway) and main diagonal `diag`.
// diag.size() == rhs.size() == off.size() + 1.
template <class T>
std::vector<T> tridiag_solve(const std::vector<T>& off_lower,
                             const std::vector<T>& diag,
                             const std::vector<T>& off_upper,
                             const std::vector<T>& rhs) {
    const std::size_t m = diag.size();
    if (m == 0 || rhs.size() != m || off_lower.size() + 1 != m || off_upper.size() + 1 != m)
        throw std::invalid_argument("tridiag_solve: inconsistent sizes");

    std::vector<T> c(m - 1), d(m);
    if (diag[0] == T(0)) throw std::runtime_error("tridiag_solve: zero pivot");
    if (m > 1) c[0] = off_upper[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i < m; ++i) {
        const T den = diag[i] - off_lower[i - 1] * c[i - 1];
        if (den == T(0)) throw std::runtime_error("tridiag_solve: zero pivot");
        if (i + 1 < m) c[i] = off_upper[i] / den;
        d[i] = (rhs[i] - off_lower[i - 1] * d[i - 1]) / den;
    }
    std::vector<T> x(m);
    x[m - 1] = d[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

}  // namespace lognls
