#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lognls/functionals.hpp"
#include "lognls/grid.hpp"
#include "test_helpers.hpp"

using namespace lognls;
using Catch::Approx;

namespace {
// frozen references (30-digit arithmetic):
//   mass(1,1) = sqrt(pi) e^2 erfc(1/2), d = mass/2
constexpr double kMass11 = 6.2798984695958958;
constexpr double kD11 = 3.1399492347979479;
constexpr double kCenter11 = 2.3988752939670979;
}

TEST_CASE("gausson constants at omega = gamma = 1") {
    const Grid g = make_grid(12.0, 1537);
    const PhysParams p{1.0, 1.0, std::nullopt};
    const GaussonReference ref = gausson_reference(p, g);
    CHECK(ref.amplitude == Approx(std::exp(1.0)).epsilon(1e-14));
    CHECK(ref.center_value == Approx(kCenter11).epsilon(1e-12));
    CHECK(ref.mass == Approx(kMass11).epsilon(1e-12));
    CHECK(ref.d_value == Approx(kD11).epsilon(1e-12));
    // quadrature route agrees with the closed form up to the O(h^2)
    // trapezoid error at the kink
    CHECK(ref.mass_quad == Approx(ref.mass).epsilon(1e-4));
}

TEST_CASE("gausson constants for the classical case omega = -1, gamma = 0") {
    const Grid g = make_grid(12.0, 1537);
    const PhysParams p{0.0, -1.0, std::nullopt};
    const GaussonReference ref = gausson_reference(p, g);
    CHECK(ref.amplitude == Approx(1.0).epsilon(1e-15));
    CHECK(ref.mass == Approx(std::sqrt(M_PI)).epsilon(1e-13));
    CHECK(ref.d_value == Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-13));
}

TEST_CASE("gausson jump identity in closed form") {
    // phi'(0+) = -(gamma/2) phi(0), so the jump equals -gamma phi(0)
    const PhysParams p{1.3, 0.4, std::nullopt};
    const Grid g = make_grid(12.0, 257);
    const GaussonReference ref = gausson_reference(p, g);
    const double phi0 = ref.profile(0.0);
    const double eps = 1e-7;
    const double right = (ref.profile(eps) - phi0) / eps;
    const double left = (phi0 - ref.profile(-eps)) / eps;
    CHECK(right - left == Approx(-p.gamma * phi0).epsilon(1e-5));
    CHECK(phi0 == Approx(ref.center_value).epsilon(1e-14));
}

TEST_CASE("energy of the Gausson equals -(omega/2) mass") {
    const Grid g = make_grid(12.0, 1537);
    const PhysParams p{1.0, 1.0, std::nullopt};
    const GridFunction phi = gausson_profile(p, g);
    CHECK(energy(phi, p) == Approx(-kD11).epsilon(2e-3));
    CHECK(energy(GridFunction(g), p) == 0.0);
}

TEST_CASE("regularized energy equals E once the band covers the range") {
    const Grid g = make_grid(12.0, 769);
    PhysParams p{1.0, 1.0, std::nullopt};
    const GridFunction u = testing::random_smooth(g, 9, true, 2.0);
    const double e_raw = energy(u, p);
    // wide band: every |u_j| above the floor lies inside [1/m, m]
    p.reg = RegLevel(1e8);
    const double e_reg = energy(u, p);
    CHECK(e_reg == Approx(e_raw).margin(1e-10));
}

TEST_CASE("S and I identities hold to roundoff") {
    const Grid g = make_grid(10.0, 513);
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> gam(-2.0, 2.0);
    for (int i = 0; i < 40; ++i) {
        const PhysParams p{gam(rng), gam(rng), std::nullopt};
        const GridFunction u = testing::random_smooth(g, 300 + i);
        const double l2 = l2_norm_sq(u);
        const double E = energy_unregularized(u, p);
        CHECK(action_S(u, p) == Approx(E + 0.5 * (p.omega + 1.0) * l2).margin(1e-12));
        CHECK(nehari_I(u, p) == Approx(2.0 * E + p.omega * l2).margin(1e-12));
    }
}

TEST_CASE("E, S, I are phase invariant") {
    const Grid g = make_grid(10.0, 513);
    const PhysParams p{0.8, 1.1, std::nullopt};
    const GridFunction u = testing::random_smooth(g, 17);
    const cplx rot = std::polar(1.0, 2.13);
    CHECK(energy(rot * u, p) == Approx(energy(u, p)).epsilon(1e-12));
    CHECK(action_S(rot * u, p) == Approx(action_S(u, p)).epsilon(1e-12));
    CHECK(nehari_I(rot * u, p) == Approx(nehari_I(u, p)).epsilon(1e-12).margin(1e-12));
}

TEST_CASE("I(phi) tends to zero at rate O(h)") {
    const PhysParams p{1.0, 1.0, std::nullopt};
    double prev = 1e9;
    for (int n : {385, 769, 1537}) {
        const Grid g = make_grid(12.0, n);
        const GridFunction phi = gausson_profile(p, g);
        const double val = std::abs(nehari_I(phi, p)) / l2_norm_sq(phi);
        CHECK(val < prev);
        CHECK((prev / val >= 1.8 || prev == 1e9));
        prev = val;
    }
    CHECK(prev <= 1e-2);
}

TEST_CASE("I of the free Gausson under the delta functional") {
    // I_{omega,gamma}(phi_{omega,0}) = -gamma e^{omega+1}
    const Grid g = make_grid(12.0, 1537);
    const double omega = 1.0, gamma = 1.0;
    const GridFunction phi0 = gausson_profile({0.0, omega, std::nullopt}, g);
    const double val = nehari_I(phi0, {gamma, omega, std::nullopt});
    CHECK(val == Approx(-gamma * std::exp(omega + 1.0)).epsilon(5e-3));
}

TEST_CASE("S of the Gausson approaches d") {
    const Grid g = make_grid(12.0, 1537);
    const PhysParams p{1.0, 1.0, std::nullopt};
    const GridFunction phi = gausson_profile(p, g);
    CHECK(action_S(phi, p) == Approx(kD11).margin(1e-3 + 12 * g.h * g.h));
}

TEST_CASE("gradient matches central differences of S") {
    const Grid g = make_grid(10.0, 385);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> gam(-1.5, 1.5);
    const double eps = 1e-5;
    for (int i = 0; i < 50; ++i) {
        const PhysParams p{gam(rng), gam(rng), std::nullopt};
        const GridFunction u = testing::random_smooth(g, 700 + i, true, 1.2);
        const GridFunction v = testing::random_smooth(g, 800 + i, true, 0.7);
        const GridFunction grad = gradient_S(u, p);
        const double lhs = inner_real(grad, v);
        const double rhs = (action_S(u + cplx(eps, 0) * v, p) -
                            action_S(u - cplx(eps, 0) * v, p)) / (2 * eps);
        CHECK(lhs == Approx(rhs).epsilon(1e-6).margin(1e-9));
    }
}

TEST_CASE("gradient of the sampled Gausson vanishes as h -> 0") {
    const PhysParams p{1.0, 1.0, std::nullopt};
    double prev = 1e9;
    for (int n : {385, 769, 1537}) {
        const Grid g = make_grid(12.0, n);
        const GridFunction phi = gausson_profile(p, g);
        const double res = std::sqrt(l2_norm_sq(gradient_S(phi, p)));
        CHECK(res < prev);
        prev = res;
    }
    CHECK(prev <= 0.5);
}

TEST_CASE("gradient is phase equivariant") {
    const Grid g = make_grid(8.0, 257);
    const PhysParams p{0.9, 0.3, std::nullopt};
    const GridFunction u = testing::random_smooth(g, 31);
    const cplx rot = std::polar(1.0, -1.07);
    const GridFunction g1 = gradient_S(rot * u, p);
    const GridFunction g2 = rot * gradient_S(u, p);
    double sup = 0.0;
    for (int j = 0; j < g.n; ++j) sup = std::max(sup, std::abs(g1.values[j] - g2.values[j]));
    CHECK(sup <= 1e-10);
}

TEST_CASE("nehari rescale zeroes I exactly") {
    const Grid g = make_grid(10.0, 513);
    for (int i = 0; i < 30; ++i) {
        const PhysParams p{0.7, 0.5, std::nullopt};
        const GridFunction u = testing::random_smooth(g, 900 + i, true, 0.5 + 0.2 * i);
        const double I0 = nehari_I(u, p);
        auto [lambda, scaled] = nehari_rescale(u, p);
        CHECK(std::abs(nehari_I(scaled, p)) <= 1e-10 * std::max(std::abs(I0), 1.0));
        if (std::abs(I0) < 1e-14) CHECK(lambda == Approx(1.0).margin(1e-12));
    }
    CHECK_THROWS_AS(nehari_rescale(GridFunction(g), PhysParams{}), std::invalid_argument);
}

TEST_CASE("rescale factor for the free Gausson with a delta present") {
    // lambda = exp(-gamma e^{omega+1} / (2||phi_{omega,0}||^2)) = exp(-gamma/(2 sqrt(pi)))
    const Grid g = make_grid(12.0, 1537);
    const double omega = 1.0, gamma = 1.0;
    const GridFunction phi0 = gausson_profile({0.0, omega, std::nullopt}, g);
    auto [lambda, scaled] = nehari_rescale(phi0, {gamma, omega, std::nullopt});
    CHECK(lambda == Approx(0.75420218898119107).epsilon(5e-3));
    CHECK(lambda < 1.0);
}

TEST_CASE("stationary residual of the Gausson converges") {
    const PhysParams p{1.0, 1.0, std::nullopt};
    StationaryResidual coarse, fine;
    {
        const Grid g = make_grid(12.0, 769);
        coarse = pointwise_residual(gausson_profile(p, g), p);
    }
    {
        const Grid g = make_grid(12.0, 1537);
        fine = pointwise_residual(gausson_profile(p, g), p);
    }
    CHECK(fine.interior_max <= 1e-3);
    CHECK(coarse.interior_max / fine.interior_max >= 3.5);  // O(h^2)
    CHECK(fine.jump_defect <= 5e-2);
    CHECK(coarse.jump_defect / fine.jump_defect >= 1.8);    // O(h)
}

TEST_CASE("classical Gausson solves the free stationary equation") {
    const PhysParams p{0.0, -1.0, std::nullopt};
    const Grid g = make_grid(12.0, 1537);
    const GridFunction u = sample(g, [](double x) { return cplx(std::exp(-0.5 * x * x), 0.0); });
    const StationaryResidual r = pointwise_residual(u, p);
    CHECK(r.interior_max <= 1e-3);
    // no jump at gamma = 0, but one-sided differences see h |u''(0)|
    CHECK(r.jump_defect <= 2 * g.h);
}

TEST_CASE("wrong frequency is detected by the residual") {
    const PhysParams p{1.0, 1.0, std::nullopt};
    const Grid g = make_grid(12.0, 1537);
    const GridFunction phi = gausson_profile(p, g);
    const PhysParams wrong{1.0, 1.1, std::nullopt};
    const StationaryResidual r = pointwise_residual(phi, wrong);
    // defect is linear in the frequency error: at least 0.1 * min|phi| on
    // the core interval |x| <= 1
    const GaussonReference ref = gausson_reference(p, g);
    CHECK(r.interior_max >= 0.1 * ref.profile(1.0));
}

TEST_CASE("d bounds hold on a parameter grid") {
    // sqrt(pi/8) e^{omega+1} e^{-gamma^2/2} <= d < (sqrt(pi)/2) e^{omega+1}
    const Grid g = make_grid(12.0, 257);
    for (double omega = -2.0; omega <= 2.0; omega += 0.5) {
        for (double gamma = 0.25; gamma <= 3.0; gamma += 0.25) {
            const GaussonReference ref = gausson_reference({gamma, omega, std::nullopt}, g);
            const double lower = std::sqrt(M_PI / 8.0) * std::exp(omega + 1.0)
                               * std::exp(-0.5 * gamma * gamma);
            const double upper = 0.5 * std::sqrt(M_PI) * std::exp(omega + 1.0);
            CHECK(ref.d_value > lower);
            CHECK(ref.d_value < upper);
        }
    }
}
