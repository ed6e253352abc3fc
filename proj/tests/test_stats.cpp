#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "lapspec/seed.hpp"
#include "lapspec/stats.hpp"

using namespace lapspec;

namespace {

long poisson_sample(Rng& rng, double mean) {
    // Knuth's product method; fine for the small means used here
    const double limit = std::exp(-mean);
    long k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= rng.uniform();
    } while (p > limit);
    return k - 1;
}

} // namespace

TEST_CASE("empirical CDF is a right-continuous step function") {
    EmpiricalCDF F({3.0, 1.0, 2.0, 2.0});
    CHECK(F(0.5) == 0.0);
    CHECK(F(1.0) == 0.25);
    CHECK(F(1.999) == 0.25);
    CHECK(F(2.0) == 0.75);
    CHECK(F(3.0) == 1.0);
    CHECK(F(99.0) == 1.0);
}

TEST_CASE("one-sample KS: exact statistic on a tiny case") {
    // sample {0.1, 0.5} against U(0,1): sup gap is 0.5 (just left of 0.5
    // the empirical CDF is 0.5 ahead... enumerated: max(0.1-0, 0.5-0.1,
    // 0.5-0.5, 1-0.5) = 0.5)
    auto uniform = [](double x) { return std::min(std::max(x, 0.0), 1.0); };
    const auto r = ks_one_sample({0.1, 0.5}, uniform);
    CHECK(r.statistic == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("one-sample KS: self-test passes, mis-specification fails") {
    auto uniform = [](double x) { return std::min(std::max(x, 0.0), 1.0); };
    Rng rng(SeedPath(1));
    std::vector<double> good(1000), shifted(1000);
    for (std::size_t i = 0; i < good.size(); ++i) {
        good[i] = rng.uniform();
        shifted[i] = std::min(1.0, good[i] * 0.8 + 0.2);
    }
    CHECK(ks_one_sample(good, uniform).pass);
    CHECK_FALSE(ks_one_sample(shifted, uniform).pass);
}

TEST_CASE("two-sample KS: limits and self-test") {
    std::vector<double> a{1.0, 2.0, 3.0};
    CHECK(ks_two_sample(a, a).statistic == 0.0);
    CHECK(ks_two_sample({1.0, 2.0}, {5.0, 6.0}).statistic == 1.0);

    Rng rng(SeedPath(2));
    std::vector<double> x(800), y(800), z(800);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.gaussian();
        y[i] = rng.gaussian();
        z[i] = rng.gaussian() + 0.5;
    }
    CHECK(ks_two_sample(x, y).pass);
    CHECK_FALSE(ks_two_sample(x, z).pass);
}

TEST_CASE("Poisson count test on synthetic counts") {
    Rng rng(SeedPath(3));
    std::vector<long> good(3000), inflated(3000);
    for (std::size_t i = 0; i < good.size(); ++i) {
        good[i] = poisson_sample(rng, 1.0);
        // mixture of Poisson(0.3) and Poisson(2.7): mean 1.5, overdispersed
        inflated[i] = poisson_sample(rng, i % 2 ? 0.3 : 2.7);
    }
    CHECK(poisson_count_test(good, 1.0).pass);
    CHECK_FALSE(poisson_count_test(inflated, 1.5).pass);
}

TEST_CASE("exponential tail test") {
    Rng rng(SeedPath(4));
    std::vector<double> expo(2000), unif(2000);
    for (std::size_t i = 0; i < expo.size(); ++i) {
        expo[i] = -std::log(rng.uniform());
        unif[i] = rng.uniform();
    }
    CHECK(exponential_tail_test(expo, 1.0).pass);
    CHECK(exponential_tail_test(expo, 1.0).statistic ==
          doctest::Approx(exponential_tail_test(expo).statistic));
    CHECK_FALSE(exponential_tail_test(unif, 1.0).pass);
    CHECK_THROWS_AS((void)exponential_tail_test({-0.5, 1.0}), std::invalid_argument);
}

TEST_CASE("TestReport serializes its fields") {
    TestReport t;
    t.statistic = 0.25;
    t.threshold = 0.5;
    t.pass = true;
    t.sampleSizes = {10, 20};
    t.description = "demo";
    const std::string j = t.to_json();
    CHECK(j.find("\"statistic\"") != std::string::npos);
    CHECK(j.find("\"threshold\"") != std::string::npos);
    CHECK(j.find("\"pass\":true") != std::string::npos);
    CHECK(j.find("demo") != std::string::npos);
}
