#pragma once

#include <cstddef>
#include <vector>
#include "lapspec/seed.hpp"

namespace lapspec {

// a_n = sqrt(2 log n)
// b_n = a_n - (log log n + log 4pi - 2) / (2 a_n)   (eigenvalue centering)
// b'_n = a_n - (log log n + log 4pi) / (2 a_n)      (iid-maximum centering)
// so b_n - b'_n = 1/a_n identically.
struct CenteringConstants {
    std::size_t n;
    double a_n;
    double b_n;
    double b_n_prime;
};
CenteringConstants constants(std::size_t n); // n >= 3

double gumbel_cdf(double x); // exp(-e^{-x})

struct OrderStatSample {
    std::size_t k;
    std::vector<double> values; // strictly descending
};

// Top k order statistics of n iid standard normals, exact in distribution:
// -log U_(i) = sum_{j<=i} E_j/(n-j+1) with E_j iid Exp(1), then inverse
// normal CDF applied to the upper-tail probability (formed via expm1 so the
// extreme tail keeps full precision). O(k) per call, so n can be huge.
OrderStatSample sample_gaussian_topk(std::size_t n, std::size_t k, const SeedPath& seed);

// intensity measure of the limiting point process: mu([a, inf)) = e^{-a}
double ppp_interval_mean(double a);

// spacing scale (log n)^{-1/2 - deltaExp}
double spacing_threshold(std::size_t n, double deltaExp);

double gumbel_sample(Rng& rng); // inverse CDF -log(-log U)

// inverse standard normal CDF (Wichura AS241, double precision)
double inverse_normal_cdf(double p);
// quantile of the upper tail: returns x with P(N > x) = q, precise for tiny q
double inverse_normal_upper(double q);

} // namespace lapspec
