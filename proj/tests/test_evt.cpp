#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "lapspec/evt.hpp"
#include "lapspec/stats.hpp"

using namespace lapspec;

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

} // namespace

TEST_CASE("centering constants against an extended-precision evaluation") {
    for (std::size_t n : {10UL, 1000UL, 100000UL, 100000000UL}) {
        const CenteringConstants cc = constants(n);
        const long double ln = std::log(static_cast<long double>(n));
        const long double a = std::sqrt(2.0L * ln);
        const long double lll = std::log(ln);
        const long double l4p = std::log(4.0L * std::acos(-1.0L));
        const long double b = a - (lll + l4p - 2.0L) / (2.0L * a);
        const long double bp = a - (lll + l4p) / (2.0L * a);
        CHECK(cc.a_n == doctest::Approx(static_cast<double>(a)).epsilon(1e-15));
        CHECK(cc.b_n == doctest::Approx(static_cast<double>(b)).epsilon(1e-14));
        CHECK(cc.b_n_prime == doctest::Approx(static_cast<double>(bp)).epsilon(1e-14));
        // the two centerings differ by exactly 1/a_n
        CHECK(std::fabs((cc.b_n - cc.b_n_prime) * cc.a_n - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS((void)constants(2), std::domain_error);
}

TEST_CASE("Gumbel CDF and sampler") {
    CHECK(gumbel_cdf(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(gumbel_cdf(3.0) == doctest::Approx(std::exp(-std::exp(-3.0))).epsilon(1e-15));
    Rng rng(SeedPath(77));
    std::vector<double> sample(3000);
    for (auto& x : sample) x = gumbel_sample(rng);
    CHECK(ks_one_sample(sample, gumbel_cdf).pass);
}

TEST_CASE("inverse normal CDF against frozen high-precision values") {
    CHECK(inverse_normal_cdf(0.5) == 0.0);
    CHECK(inverse_normal_cdf(0.975) ==
          doctest::Approx(1.95996398454005423552).epsilon(1e-14));
    CHECK(inverse_normal_cdf(0.99) ==
          doctest::Approx(2.32634787404084110089).epsilon(1e-14));
    CHECK(inverse_normal_cdf(0.0013498980316300945) ==
          doctest::Approx(-3.0).epsilon(1e-14));
    CHECK(inverse_normal_cdf(0.3) ==
          doctest::Approx(-0.52440051270804078404).epsilon(1e-14));
    CHECK(inverse_normal_upper(1e-10) ==
          doctest::Approx(6.36134090240405620470).epsilon(1e-13));
    CHECK(inverse_normal_upper(1e-300) ==
          doctest::Approx(37.0470962993612).epsilon(1e-12));
    // round trip through the erfc-based CDF
    for (double p : {0.01, 0.2, 0.5, 0.9, 0.999})
        CHECK(normal_cdf(inverse_normal_cdf(p)) == doctest::Approx(p).epsilon(1e-12));
}

TEST_CASE("top-k order statistics: shape and distribution") {
    const OrderStatSample os = sample_gaussian_topk(100000, 6, SeedPath(9));
    REQUIRE(os.values.size() == 6);
    for (std::size_t i = 1; i < 6; ++i) CHECK(os.values[i - 1] > os.values[i]);

    // distribution check: exact CDF of the max of n iid normals
    const std::size_t n = 100;
    std::vector<double> maxes(3000);
    for (std::size_t i = 0; i < maxes.size(); ++i)
        maxes[i] = sample_gaussian_topk(n, 1, SeedPath(10).child(i)).values[0];
    const auto report = ks_one_sample(
        maxes, [&](double x) { return std::pow(normal_cdf(x), double(n)); });
    CHECK(report.pass);

    // cross-check against brute-force maxima from the same generator family
    std::vector<double> brute(3000);
    for (std::size_t i = 0; i < brute.size(); ++i) {
        Rng rng(SeedPath(11).child(i));
        double m = -1e300;
        for (std::size_t j = 0; j < n; ++j) m = std::max(m, rng.gaussian());
        brute[i] = m;
    }
    CHECK(ks_two_sample(maxes, brute).pass);
}

TEST_CASE("point process helpers") {
    CHECK(ppp_interval_mean(0.0) == 1.0);
    CHECK(ppp_interval_mean(2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK(spacing_threshold(1000, 0.25) ==
          doctest::Approx(std::pow(std::log(1000.0), -0.75)).epsilon(1e-15));
}
