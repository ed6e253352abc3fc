#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace lapspec {

class EmpiricalCDF {
public:
    explicit EmpiricalCDF(std::vector<double> values); // sorts ascending
    double operator()(double x) const;                 // right-continuous step
    std::size_t size() const { return sorted_.size(); }
    const std::vector<double>& sorted() const { return sorted_; }

private:
    std::vector<double> sorted_;
};

struct TestReport {
    double statistic = 0.0;
    double threshold = 0.0;
    bool pass = false; // pass <=> statistic <= threshold
    std::vector<std::size_t> sampleSizes;
    std::string description;

    std::string to_json() const;
};

// default significance: alpha = 0.01, asymptotic KS quantile c(0.01) = 1.628
constexpr double kKsCritical1pc = 1.628;

TestReport ks_one_sample(const std::vector<double>& sample,
                         const std::function<double(double)>& cdf,
                         double critical = kKsCritical1pc,
                         const std::string& label = "ks-one-sample");

TestReport ks_two_sample(const std::vector<double>& a,
                         const std::vector<double>& b,
                         double critical = kKsCritical1pc,
                         const std::string& label = "ks-two-sample");

// Poisson(mean) check on iid counts: dispersion index (sample variance over
// the reference mean) within [0.9, 1.1], plus chi-square GOF over bins
// {0,1,2,>=3} at the 1% level (chi2_crit(3 df) = 11.345). statistic is the
// worst normalized component; pass <=> statistic <= 1.
TestReport poisson_count_test(const std::vector<long>& counts, double mean);

// one-sample KS against Exp(rate); sample must be nonnegative
TestReport exponential_tail_test(const std::vector<double>& sample, double rate = 1.0);

} // namespace lapspec
