#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lapspec {

using DiagonalVector = std::vector<double>;

// Dense real symmetric matrix, lower triangle stored row-wise:
// index(i,j) = i(i+1)/2 + j for j <= i.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(std::size_t n) : n_(n), a_(n * (n + 1) / 2, 0.0) {
        if (n == 0) throw std::invalid_argument("SymmetricMatrix: dim must be >= 1");
    }

    std::size_t dim() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const {
        return i >= j ? a_[i * (i + 1) / 2 + j] : a_[j * (j + 1) / 2 + i];
    }
    void set(std::size_t i, std::size_t j, double v) {
        if (i >= j) a_[i * (i + 1) / 2 + j] = v;
        else        a_[j * (j + 1) / 2 + i] = v;
    }
    void add(std::size_t i, std::size_t j, double v) {
        if (i >= j) a_[i * (i + 1) / 2 + j] += v;
        else        a_[j * (j + 1) / 2 + i] += v;
    }

    double row_sum(std::size_t i) const {
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j);
        return s;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : a_) { double av = v < 0 ? -v : v; if (av > m) m = av; }
        return m;
    }

    double trace() const {
        double t = 0.0;
        for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    // full row-major expansion (both triangles); eigensolver working format
    std::vector<double> to_full() const {
        std::vector<double> f(n_ * n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                const double v = a_[i * (i + 1) / 2 + j];
                f[i * n_ + j] = v;
                f[j * n_ + i] = v;
            }
        return f;
    }

    const std::vector<double>& packed() const { return a_; }
    std::vector<double>& packed() { return a_; }

private:
    std::size_t n_;
    std::vector<double> a_;
};

} // namespace lapspec
