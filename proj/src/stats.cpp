#include "lapspec/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lapspec {

EmpiricalCDF::EmpiricalCDF(std::vector<double> values) : sorted_(std::move(values)) {
    if (sorted_.empty()) throw std::invalid_argument("EmpiricalCDF: empty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCDF::operator()(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

std::string TestReport::to_json() const {
    std::string sizes = "[";
    for (std::size_t i = 0; i < sampleSizes.size(); ++i) {
        if (i) sizes += ",";
        sizes += std::to_string(sampleSizes[i]);
    }
    sizes += "]";
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "{\"statistic\":%.17g,\"threshold\":%.17g,\"pass\":%s,\"sizes\":",
                  statistic, threshold, pass ? "true" : "false");
    std::string esc;
    for (char c : description) {
        if (c == '"' || c == '\\') { esc += '\\'; }
        esc += c;
    }
    return std::string(buf) + sizes + ",\"description\":\"" + esc + "\"}";
}

TestReport ks_one_sample(const std::vector<double>& sample,
                         const std::function<double(double)>& cdf,
                         double critical, const std::string& label) {
    if (sample.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
    EmpiricalCDF ecdf(sample);
    const auto& s = ecdf.sorted();
    const double m = static_cast<double>(s.size());
    double d = 0.0; // sup over jump points: both one-sided gaps at each x_i
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double F = cdf(s[i]);
        d = std::max(d, F - static_cast<double>(i) / m);
        d = std::max(d, static_cast<double>(i + 1) / m - F);
    }
    TestReport r;
    r.statistic = d;
    r.threshold = critical / std::sqrt(m);
    r.pass = r.statistic <= r.threshold;
    r.sampleSizes = {s.size()};
    r.description = label;
    return r;
}

TestReport ks_two_sample(const std::vector<double>& a, const std::vector<double>& b,
                         double critical, const std::string& label) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::vector<double> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double m = static_cast<double>(sa.size()), k = static_cast<double>(sb.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < sa.size() && j < sb.size()) {
        const double x = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= x) ++i;
        while (j < sb.size() && sb[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / m - static_cast<double>(j) / k));
    }
    TestReport r;
    r.statistic = d;
    r.threshold = critical * std::sqrt((m + k) / (m * k));
    r.pass = r.statistic <= r.threshold;
    r.sampleSizes = {sa.size(), sb.size()};
    r.description = label;
    return r;
}

TestReport poisson_count_test(const std::vector<long>& counts, double mean) {
    if (counts.empty()) throw std::invalid_argument("poisson_count_test: empty counts");
    if (!(mean > 0.0)) throw std::invalid_argument("poisson_count_test: mean must be > 0");
    const double m = static_cast<double>(counts.size());
    double sum = 0.0;
    for (long c : counts) sum += static_cast<double>(c);
    const double empMean = sum / m;
    double ss = 0.0;
    for (long c : counts) {
        const double d = static_cast<double>(c) - empMean;
        ss += d * d;
    }
    const double empVar = counts.size() > 1 ? ss / (m - 1.0) : 0.0;
    const double dispersion = empVar / mean;

    // chi-square GOF over {0,1,2,>=3} against Poisson(mean)
    double pb[4];
    pb[0] = std::exp(-mean);
    pb[1] = pb[0] * mean;
    pb[2] = pb[1] * mean / 2.0;
    pb[3] = 1.0 - pb[0] - pb[1] - pb[2];
    double obs[4] = {0, 0, 0, 0};
    for (long c : counts) obs[c <= 2 ? (c < 0 ? 0 : c) : 3] += 1.0;
    double chi2 = 0.0;
    for (int bIdx = 0; bIdx < 4; ++bIdx) {
        const double expd = m * pb[bIdx];
        if (expd > 0.0) {
            const double d = obs[bIdx] - expd;
            chi2 += d * d / expd;
        }
    }
    const double chi2Crit = 11.345; // 1% upper quantile, 3 df

    TestReport r;
    r.statistic = std::max(std::fabs(dispersion - 1.0) / 0.1, chi2 / chi2Crit);
    r.threshold = 1.0;
    r.pass = r.statistic <= r.threshold;
    r.sampleSizes = {counts.size()};
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "poisson-count: mean ref %.6g, empirical mean %.6g, dispersion %.6g, chi2 %.6g (crit %.6g)",
                  mean, empMean, dispersion, chi2, chi2Crit);
    r.description = buf;
    return r;
}

TestReport exponential_tail_test(const std::vector<double>& sample, double rate) {
    if (sample.empty()) throw std::invalid_argument("exponential_tail_test: empty sample");
    double sum = 0.0;
    for (double x : sample) {
        if (x < 0.0) throw std::invalid_argument("exponential_tail_test: negative value");
        sum += x;
    }
    TestReport r = ks_one_sample(
        sample, [rate](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); },
        kKsCritical1pc, "exponential-tail");
    char buf[120];
    std::snprintf(buf, sizeof buf, "exponential-tail: rate %.6g, sample mean %.6g",
                  rate, sum / static_cast<double>(sample.size()));
    r.description = buf;
    return r;
}

} // namespace lapspec
