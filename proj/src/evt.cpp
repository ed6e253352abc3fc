#include "lapspec/evt.hpp"

#include <cmath>
#include <stdexcept>

namespace lapspec {

CenteringConstants constants(std::size_t n) {
    if (n < 3) throw std::domain_error("constants: need n >= 3 (log log n > 0)");
    const double logn = std::log(static_cast<double>(n));
    const double a = std::sqrt(2.0 * logn);
    const double log4pi = std::log(4.0 * 3.14159265358979323846264338327950288);
    const double common = std::log(logn) + log4pi;
    return CenteringConstants{n, a, a - (common - 2.0) / (2.0 * a), a - common / (2.0 * a)};
}

double gumbel_cdf(double x) { return std::exp(-std::exp(-x)); }

double gumbel_sample(Rng& rng) { return -std::log(-std::log(rng.uniform())); }

// AS241 (Wichura 1988), PPND16: max relative error about 1e-15
double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("inverse_normal_cdf: p must be in (0,1)");
    const double q = p - 0.5;
    double r;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
            (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                  6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
              1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
            (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                  3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
              4.2313330701600911252e1) * r + 1.0);
    }
    r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                  3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                  6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                  2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                  1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -val : val;
}

double inverse_normal_upper(double q) {
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("inverse_normal_upper: q must be in (0,1)");
    // P(N > x) = q  <=>  x = -Phi^{-1}(q); AS241's tail branch keeps
    // precision for q down to ~1e-300
    return -inverse_normal_cdf(q);
}

OrderStatSample sample_gaussian_topk(std::size_t n, std::size_t k, const SeedPath& seed) {
    if (k < 1 || k > n) throw std::invalid_argument("sample_gaussian_topk: k out of range");
    Rng rng(seed);
    OrderStatSample out;
    out.k = k;
    out.values.resize(k);
    double w = 0.0; // -log U_(i), increasing
    for (std::size_t i = 0; i < k; ++i) {
        const double expDraw = -std::log(rng.uniform());
        w += expDraw / static_cast<double>(n - i);
        const double tailProb = -std::expm1(-w); // 1 - U_(i), no cancellation
        out.values[i] = inverse_normal_upper(tailProb);
        if (i > 0 && !(out.values[i] < out.values[i - 1])) {
            // ties have probability zero; nudge apart to keep the invariant
            out.values[i] = std::nextafter(out.values[i - 1], -1e308);
        }
    }
    return out;
}

double ppp_interval_mean(double a) { return std::exp(-a); }

double spacing_threshold(std::size_t n, double deltaExp) {
    if (n < 3) throw std::domain_error("spacing_threshold: need n >= 3");
    return std::pow(std::log(static_cast<double>(n)), -0.5 - deltaExp);
}

} // namespace lapspec
