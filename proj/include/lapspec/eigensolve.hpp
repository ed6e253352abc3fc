#pragma once

#include <cstddef>
#include <vector>
#include "lapspec/matrix.hpp"

namespace lapspec {

struct Tridiagonal {
    std::size_t n = 0;
    std::vector<double> diag;    // length n
    std::vector<double> offdiag; // length n-1 (offdiag[i] couples i and i+1)
    std::vector<double> Q;       // row-major n*n when accumulated, else empty
    bool has_q() const { return !Q.empty(); }
};

struct Spectrum {
    std::vector<double> values; // descending
    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

Tridiagonal tridiagonalize(const SymmetricMatrix& S, bool wantQ = false);

// All eigenvalues of the tridiagonal, descending (implicit-shift QL with
// Wilkinson shifts). If accumulate is non-null (row-major n*n, e.g. T.Q or
// identity) it is rotated in place into the eigenvector matrix: column j of
// the result pairs with the j-th computed eigenvalue BEFORE sorting, so use
// tri_eigen_system/eigen_system for matched pairs.
std::vector<double> tri_eigenvalues_unsorted(const Tridiagonal& T,
                                             std::vector<double>* accumulate = nullptr);

Spectrum tri_eigenvalues(const Tridiagonal& T);

// Sturm-count of eigenvalues strictly below x
std::size_t tri_count_below(const Tridiagonal& T, double x);
std::size_t tri_count_at_least(const Tridiagonal& T, double x);

// k largest eigenvalues by Sturm bisection, descending
Spectrum tri_top_k(const Tridiagonal& T, std::size_t k);

Spectrum eigenvalues(const SymmetricMatrix& S);
Spectrum top_k_eigenvalues(const SymmetricMatrix& S, std::size_t k);

struct EigenSystem {
    Spectrum values;                // descending
    std::vector<double> vectors;    // row-major n*n; column j <-> values[j]
    std::size_t n = 0;
};
EigenSystem eigen_system(const SymmetricMatrix& S);

} // namespace lapspec
