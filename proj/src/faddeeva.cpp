#include "lapspec/freeconv.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace lapspec {

namespace {

constexpr int kWeidemanN = 64;
constexpr double kSqrtPi = 1.7724538509055160272981674833411;

// Weideman's rational approximation (SIAM Rev. style construction):
// coefficients are the leading Fourier coefficients of the transformed
// Gaussian, computed here by a direct cosine sum at first use.
struct WeidemanTable {
    double L;
    std::array<double, kWeidemanN> a;
    WeidemanTable() {
        const int N = kWeidemanN, M = 2 * N, M2 = 4 * N;
        L = std::sqrt(N / std::sqrt(2.0));
        const double pi = 3.14159265358979323846264338327950288;
        for (int n = 1; n <= N; ++n) {
            long double acc = 0.0L;
            for (int k = -M + 1; k <= M - 1; ++k) {
                const long double theta = k * static_cast<long double>(pi) / M;
                const long double t = L * std::tan(theta / 2.0L);
                const long double f = std::exp(-t * t) * (L * L + t * t);
                acc += f * std::cos(n * theta);
            }
            a[static_cast<std::size_t>(n - 1)] = static_cast<double>(acc / M2);
        }
    }
};

Complex weideman_w(Complex z) {
    static const WeidemanTable tab;
    const Complex iz(-z.imag(), z.real());
    const Complex denom = tab.L - iz;
    const Complex Z = (tab.L + iz) / denom;
    Complex p(0.0, 0.0); // Horner: sum a_n Z^{n-1}
    for (int n = kWeidemanN - 1; n >= 0; --n)
        p = p * Z + tab.a[static_cast<std::size_t>(n)];
    return 2.0 * p / (denom * denom) + (1.0 / kSqrtPi) / denom;
}

// Laplace continued fraction, accurate for large |z| in the upper half-plane
Complex contfrac_w(Complex z, int depth = 48) {
    Complex t = z;
    for (int k = depth; k >= 1; --k) t = z - (0.5 * k) / t;
    return Complex(0.0, 1.0 / kSqrtPi) / t;
}

} // namespace

Complex faddeeva_w(Complex z) {
    if (z.imag() < 0.0)
        throw std::domain_error("faddeeva_w: lower half-plane not supported");
    return std::norm(z) >= 100.0 ? contfrac_w(z) : weideman_w(z);
}

Complex gaussian_stieltjes(Complex z) {
    if (z.imag() <= 0.0)
        throw std::domain_error("gaussian_stieltjes: requires Im z > 0");
    const double invSqrt2 = 0.70710678118654752440084436210485;
    const Complex w = faddeeva_w(z * invSqrt2);
    // i*sqrt(pi/2)*w
    const double c = 1.2533141373155002512078826424055; // sqrt(pi/2)
    return Complex(-c * w.imag(), c * w.real());
}

Complex gaussian_stieltjes_prime(Complex z) {
    if (z.imag() <= 0.0)
        throw std::domain_error("gaussian_stieltjes_prime: requires Im z > 0");
    // s'(z) = -1 - z*s(z)  (integrate phi'(x) = -x phi(x) by parts)
    return -1.0 - z * gaussian_stieltjes(z);
}

} // namespace lapspec
