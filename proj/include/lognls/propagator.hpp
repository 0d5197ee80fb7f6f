#pragma once

// Explicit linear propagator for gamma < 0, used as a cross-check oracle for
// the Crank-Nicolson stepper. The delta-free part is the Dirichlet-box
// propagator on an enlarged box (sine-spectral, exact in time); the point
// interaction enters through an exponential-tail correction built from
// rho_gamma(s) = -(gamma/2) e^{(gamma/2)s} on s >= 0.
//
// For even data phi and x > 0 the half-line problem with the Robin condition
// u'(0+) = -(gamma/2) u(0) has the image representation
//   u(t,x) = U(t)phi(x) + gamma * int_0^inf e^{gamma s/2} [U(t)(phi chi_-)](x+s) ds,
// and the correlation commutes with U(t), so the correction is U(t) applied
// to chi(w) = gamma * int_0^{-w} e^{gamma s/2} phi(w+s) ds (supported on w<0),
// evaluated at |x|. Odd data never sees the delta.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lognls/grid.hpp"

namespace lognls {

namespace detail {

// Dirichlet sine-series propagation on [-Lbox, Lbox] sampled at nn nodes:
// forward coefficients from the source index range, exact phase factors
// e^{-i (k pi / 2Lbox)^2 t}, then evaluation on [eval_lo, eval_hi].
class SinePropagator {
  public:
    SinePropagator(int nn, double Lbox) : nn_(nn), Lbox_(Lbox), M_(nn - 1) {
        table_.resize(2 * M_);
        for (int m = 0; m < 2 * M_; ++m) table_[m] = std::sin(M_PI * m / M_);
    }

    // src must have nn entries; entries outside [src_lo, src_hi] are treated
    // as zero. Output has nn entries, filled on [eval_lo, eval_hi] only.
    std::vector<cplx> run(const std::vector<cplx>& src, int src_lo, int src_hi,
                          double t, int eval_lo, int eval_hi) const {
        const int kmax = nn_ - 2;
        const int period = 2 * M_;
        std::vector<cplx> coef(kmax + 1, cplx(0, 0));
        for (int k = 1; k <= kmax; ++k) {
            cplx acc(0, 0);
            int idx = static_cast<int>((static_cast<std::int64_t>(k) * src_lo) % period);
            for (int j = src_lo; j <= src_hi; ++j) {
                acc += src[j] * table_[idx];
                idx += k;
                if (idx >= period) idx -= period;
            }
            coef[k] = (2.0 / M_) * acc;
        }
        for (int k = 1; k <= kmax; ++k) {
            const double lam = (k * M_PI / (2.0 * Lbox_)) * (k * M_PI / (2.0 * Lbox_));
            coef[k] *= std::polar(1.0, -lam * t);
        }
        std::vector<cplx> out(nn_, cplx(0, 0));
        for (int j = eval_lo; j <= eval_hi; ++j) {
            cplx acc(0, 0);
            int idx = j % period;
            for (int k = 1; k <= kmax; ++k) {
                acc += coef[k] * table_[idx];
                idx += j;
                if (idx >= period) idx -= period;
            }
            out[j] = acc;
        }
        return out;
    }

  private:
    int nn_;
    double Lbox_;
    int M_;
    std::vector<double> table_;
};

}  // namespace detail

inline GridFunction linear_propagator_oracle(const GridFunction& u0, double t, double gamma,
                                             int extend = 3) {
    if (!(gamma < 0.0))
        throw std::invalid_argument("linear_propagator_oracle: formula requires gamma < 0");
    const Grid& g = u0.grid;
    const int n = g.n;
    const int o = g.origin_index;

    GridFunction even(g), odd(g);
    for (int j = 0; j < n; ++j) {
        const cplx a = u0.values[j], b = u0.values[n - 1 - j];
        even.values[j] = 0.5 * (a + b);
        odd.values[j] = 0.5 * (a - b);
    }
    double odd_mass = 0.0;
    for (const cplx& v : odd.values) odd_mass += std::norm(v);

    const int ne = extend * (n - 1) + 1;
    const double Le = extend * g.L;
    const int oe = (ne - 1) / 2;
    const int lo = oe - o;

    std::vector<cplx> fe(ne, cplx(0, 0));
    for (int j = 0; j < n; ++j) fe[lo + j] = even.values[j];

    // Correction data chi on the extended grid, kernel truncated where
    // e^{(gamma/2) s} drops below 1e-16 (never beyond the grid extent).
    const double cap = std::ceil(-2.0 * std::log(1e-16) / (-gamma) / g.h);
    const int kcap = static_cast<int>(std::min(cap, static_cast<double>(oe)));
    std::vector<cplx> chi(ne, cplx(0, 0));
    std::vector<double> kern(kcap + 1);
    for (int k = 0; k <= kcap; ++k) kern[k] = std::exp(0.5 * gamma * k * g.h);
    for (int j = 0; j < oe; ++j) {
        const int K = std::min(oe - j, kcap);
        cplx acc = 0.5 * (fe[j] + kern[K] * fe[j + K]);
        for (int k = 1; k < K; ++k) acc += kern[k] * fe[j + k];
        chi[j] = gamma * g.h * acc;
    }

    detail::SinePropagator prop(ne, Le);
    const std::vector<cplx> he_t = prop.run(fe, lo, lo + n - 1, t, lo, lo + n - 1);
    const std::vector<cplx> chi_t = prop.run(chi, 1, oe, t, oe, lo + n - 1);

    GridFunction out(g);
    if (odd_mass > 0.0) {
        std::vector<cplx> fo(ne, cplx(0, 0));
        for (int j = 0; j < n; ++j) fo[lo + j] = odd.values[j];
        const std::vector<cplx> ho_t = prop.run(fo, lo, lo + n - 1, t, lo, lo + n - 1);
        for (int j = 0; j < n; ++j) out.values[j] = ho_t[lo + j];
    }
    for (int j = 0; j < n; ++j) {
        const int jj = lo + j;
        const int jabs = oe + std::abs(jj - oe);
        out.values[j] += he_t[jj] + chi_t[jabs];
    }
    return out;
}

}  // namespace lognls
