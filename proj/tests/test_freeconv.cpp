#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "lapspec/defaults.hpp"
#include "lapspec/freeconv.hpp"
#include "lapspec/quadrature.hpp"

using namespace lapspec;

namespace {

constexpr double kSqrt2Pi = 2.50662827463100050241576528481;

// quadrature oracle for the Gaussian Stieltjes transform, Im z not too small
Complex stieltjes_oracle(Complex z) {
    auto re = [&](double x) {
        const double phi = std::exp(-0.5 * x * x) / kSqrt2Pi;
        return ((x - z.real()) * phi) /
               ((x - z.real()) * (x - z.real()) + z.imag() * z.imag());
    };
    auto im = [&](double x) {
        const double phi = std::exp(-0.5 * x * x) / kSqrt2Pi;
        return (z.imag() * phi) /
               ((x - z.real()) * (x - z.real()) + z.imag() * z.imag());
    };
    return Complex(GaussKronrod::integrate(re, -40.0, 40.0, 1e-14, 1e-13),
                   GaussKronrod::integrate(im, -40.0, 40.0, 1e-14, 1e-13));
}

} // namespace

TEST_CASE("Faddeeva special values") {
    CHECK(std::abs(faddeeva_w(Complex(0.0, 0.0)) - Complex(1.0, 0.0)) < 1e-14);
    // w(i) = e * erfc(1)
    const double wi = std::exp(1.0) * std::erfc(1.0);
    CHECK(std::abs(faddeeva_w(Complex(0.0, 1.0)) - Complex(wi, 0.0)) < 1e-13);
    CHECK_THROWS_AS((void)faddeeva_w(Complex(0.0, -0.1)), std::domain_error);
}

TEST_CASE("Gaussian Stieltjes transform matches the quadrature oracle") {
    for (Complex z : {Complex(0.0, 0.5), Complex(1.3, 0.2), Complex(-2.7, 1.0),
                      Complex(4.0, 0.1), Complex(-6.0, 3.0), Complex(9.5, 0.3),
                      Complex(11.0, 0.4), Complex(0.0, 12.0)}) {
        const Complex s = gaussian_stieltjes(z);
        CHECK(std::abs(s - stieltjes_oracle(z)) < 1e-10);
        CHECK(s.imag() > 0.0);
        // conjugation symmetry s(-conj(z)) = -conj(s(z))
        CHECK(std::abs(gaussian_stieltjes(Complex(-z.real(), z.imag())) +
                       std::conj(s)) < 1e-13);
    }
    CHECK_THROWS_AS((void)gaussian_stieltjes(Complex(1.0, 0.0)), std::domain_error);
}

TEST_CASE("derivative identity s'(z) = -1 - z s(z)") {
    for (Complex z : {Complex(0.7, 0.4), Complex(-3.0, 0.8), Complex(10.5, 1.0)}) {
        const Complex h(1e-6, 0.0);
        const Complex fd =
            (gaussian_stieltjes(z + h) - gaussian_stieltjes(z - h)) / (2.0 * h);
        CHECK(std::abs(gaussian_stieltjes_prime(z) - fd) < 1e-7);
    }
}

TEST_CASE("branch continuity at the large-|z| switch") {
    // s itself varies by ~|s'| * 0.002 across the bracket, so compare the
    // measured change against the smooth first-order prediction: any branch
    // jump at the algorithm switch would show up as an excess
    for (double phase : {0.2, 0.8, 1.4, 2.6}) {
        const Complex zIn = std::polar(9.999, phase);
        const Complex zOut = std::polar(10.001, phase);
        const Complex zMid = std::polar(10.0, phase);
        const Complex smooth = gaussian_stieltjes_prime(zMid) * (zOut - zIn);
        CHECK(std::abs(gaussian_stieltjes(zOut) - gaussian_stieltjes(zIn) - smooth) <
              1e-9);
    }
}

TEST_CASE("solve_m: residual, Herglotz, symmetry, errors") {
    for (Complex z : {Complex(0.0, 0.01), Complex(2.5, 0.001), Complex(-1.2, 0.5),
                      Complex(3.2, 0.05), Complex(7.0, 0.001)}) {
        const Complex m = solve_m(z);
        CHECK(std::abs(m - gaussian_stieltjes(z + m)) < 1e-12);
        CHECK(m.imag() > 0.0);
        const Complex mr = solve_m(Complex(-z.real(), z.imag()));
        CHECK(std::abs(mr + std::conj(m)) < 1e-10);
    }
    CHECK_THROWS_AS((void)solve_m(Complex(1.0, -0.1)), std::domain_error);
}

TEST_CASE("subordination height at zero matches the closed form") {
    // level = 1 at u = 0 reduces to sqrt(pi/2) e^{v^2/2} erfc(v/sqrt2) = v
    double lo = 0.1, hi = 2.0;
    for (int it = 0; it < 200; ++it) {
        const double v = 0.5 * (lo + hi);
        const double f =
            std::sqrt(M_PI / 2.0) * std::exp(0.5 * v * v) * std::erfc(v / std::sqrt(2.0));
        (f > v ? lo : hi) = v;
    }
    CHECK(biane_v(0.0) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-9));
}

TEST_CASE("kernel integrals match a plain quadrature oracle") {
    for (auto [u, v] : {std::pair{1.0, 0.7}, {-2.0, 0.3}, {0.0, 1.4}, {3.0, 0.05}}) {
        auto level = [&, u = u, v = v](double x) {
            return std::exp(-0.5 * x * x) / kSqrt2Pi / ((u - x) * (u - x) + v * v);
        };
        auto shift = [&, u = u, v = v](double x) {
            return (u - x) * std::exp(-0.5 * x * x) / kSqrt2Pi /
                   ((u - x) * (u - x) + v * v);
        };
        const auto k = detail::biane_kernel(u, v);
        CHECK(k.level == doctest::Approx(GaussKronrod::integrate(level, -45.0, 45.0,
                                                                 1e-13, 1e-12))
                             .epsilon(1e-9));
        CHECK(k.shift == doctest::Approx(GaussKronrod::integrate(shift, -45.0, 45.0,
                                                                 1e-13, 1e-12))
                             .epsilon(1e-8));
    }
}

TEST_CASE("subordination symmetry and envelope") {
    for (double u : {0.7, 1.9, 3.0}) {
        CHECK(std::fabs(biane_v(u) - biane_v(-u)) < 1e-10);
        CHECK(std::fabs(biane_psi(u) + biane_psi(-u)) < 1e-10);
        CHECK(biane_psi(u) > u); // positive outward shift
    }
    for (double u : {3.0, 4.0, 5.0})
        CHECK(biane_v(u) <= defaults::kBianeVEnvelope * std::exp(-0.5 * u * u));
}

TEST_CASE("Lipschitz region boundary") {
    CHECK(lipschitz_region_boundary(1.0, 0.9) ==
          doctest::Approx(biane_v(0.9)).epsilon(1e-12));
    // a lower threshold (larger t) forces a taller boundary
    CHECK(lipschitz_region_boundary(4.0, 0.9) > biane_v(0.9));
    CHECK_THROWS_AS((void)lipschitz_region_boundary(0.5, 0.0), std::invalid_argument);
}

TEST_CASE("density grid: monotone map, mass, inversion against solve_m") {
    const DensityGrid g = density_grid(-6.0, 6.0, 301);
    for (std::size_t i = 1; i < g.x_nodes.size(); ++i)
        CHECK(g.x_nodes[i] > g.x_nodes[i - 1]);
    CHECK(std::fabs(density_grid_mass(g) - 1.0) < 2e-4);
    for (std::size_t i = 30; i < g.x_nodes.size() - 30; i += 40) {
        const Complex m = solve_m(Complex(g.x_nodes[i], 1e-4));
        CHECK(std::fabs(g.p_values[i] - m.imag() / M_PI) < 5e-4);
    }
    CHECK_THROWS_AS((void)density_grid(1.0, -1.0, 100), std::invalid_argument);
    CHECK_THROWS_AS((void)density_grid(-1.0, 1.0, 4), std::invalid_argument);
}

TEST_CASE("density grid CSV round-trips exactly") {
    const DensityGrid g = density_grid(-2.0, 2.0, 33);
    const DensityGrid h = parse_density_grid_csv(density_grid_csv(g));
    REQUIRE(h.u_nodes.size() == g.u_nodes.size());
    for (std::size_t i = 0; i < g.u_nodes.size(); ++i) {
        CHECK(h.u_nodes[i] == g.u_nodes[i]);
        CHECK(h.x_nodes[i] == g.x_nodes[i]);
        CHECK(h.v_values[i] == g.v_values[i]);
        CHECK(h.p_values[i] == g.p_values[i]);
    }
    CHECK_THROWS_AS((void)parse_density_grid_csv("a,b\n1,2\n"), std::runtime_error);
}

TEST_CASE("predict_location solves the displacement equation") {
    const double eta = 0.1;
    for (double X : {2.5, 3.0, 4.2}) {
        const double E = predict_location(X, eta);
        CHECK(E > X);
        CHECK(std::fabs(X - E - solve_m(Complex(E, eta)).real()) < 1e-10);
    }
    CHECK(predict_location(3.0, eta) > predict_location(2.5, eta));
    CHECK_THROWS_AS((void)predict_location(0.9, eta), std::invalid_argument);
    CHECK_THROWS_AS((void)predict_location(2.0, -1.0), std::invalid_argument);
}
