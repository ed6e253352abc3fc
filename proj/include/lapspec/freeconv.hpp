#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace lapspec {

using Complex = std::complex<double>; // z = E + i*eta

struct SolverConfig {
    double tol = 1e-12;
    int maxIter = 500;
    double damping = 1.0; // in (0,1]; auto-halved on residual increase
};

// Faddeeva function w(z) = e^{-z^2} erfc(-iz), valid for Im z >= 0.
Complex faddeeva_w(Complex z);

// Stieltjes transform of the standard Gaussian, s(z) = i*sqrt(pi/2)*w(z/sqrt2).
// Requires Im z > 0.
Complex gaussian_stieltjes(Complex z);
Complex gaussian_stieltjes_prime(Complex z);

// Fixed point m = s(z + m), branch with z*m -> -1 at infinity (m0 = -1/z).
Complex solve_m(Complex z, const SolverConfig& cfg = SolverConfig{});

// Biane subordination: v(u) is the unique v >= 0 with
//   (1/sqrt(2*pi)) Int e^{-x^2/2} / ((u-x)^2 + v^2) dx = 1,
// psi(u) = u + (1/sqrt(2*pi)) Int (u-x) e^{-x^2/2} / ((u-x)^2 + v(u)^2) dx,
// and the free-convolution density is p(psi(u)) = v(u)/pi.
double biane_v(double u);
double biane_psi(double u);

// Boundary height v_t(u) of the region where s is (1/t)-Lipschitz: same
// kernel as biane_v with threshold 1/t instead of 1. t >= 1.
double lipschitz_region_boundary(double t, double u);

struct DensityGrid {
    std::vector<double> u_nodes;
    std::vector<double> x_nodes; // psi(u), strictly increasing
    std::vector<double> v_values;
    std::vector<double> p_values; // = v/pi
};
DensityGrid density_grid(double uMin, double uMax, std::size_t count);
double density_grid_mass(const DensityGrid& g); // trapezoid over x_nodes

std::string density_grid_csv(const DensityGrid& g);
DensityGrid parse_density_grid_csv(const std::string& text);

// Root E >= X of X - E - Re m(E + i*eta) = 0 (extreme-eigenvalue location).
// Bracket [X, X+2]; requires X > 1, eta > 0.
double predict_location(double X, double eta, const SolverConfig& cfg = SolverConfig{});

namespace detail {
// kernel integrals at (u, v), v > 0:
//   first  = (1/sqrt(2pi)) Int f(x) /((u-x)^2+v^2) dx
//   second = (1/sqrt(2pi)) Int (u-x) f(x) /((u-x)^2+v^2) dx
struct BianeKernel { double level; double shift; };
BianeKernel biane_kernel(double u, double v);
double biane_v_threshold(double u, double threshold);
} // namespace detail

} // namespace lapspec
