#pragma once

#include <cstddef>
#include "lapspec/matrix.hpp"
#include "lapspec/seed.hpp"

namespace lapspec {

// Orthogonal matrix R-tilde whose last column is e = (1/sqrt(n),...)^T,
// realized as the Householder reflection H = I - beta*u*u^T with u = e_n - e.
// H*e_n = e holds exactly (beta*u_n = 1), so no column permutation is needed.
// Stored implicitly; conjugations cost O(n^2).
class OrthogonalReducer {
public:
    explicit OrthogonalReducer(std::size_t n);

    std::size_t dim() const { return n_; }

    // entry of the explicit matrix R-tilde
    double entry(std::size_t i, std::size_t j) const;

    // H * S * H (same dimension; H symmetric so this is R~^T S R~)
    SymmetricMatrix conjugate(const SymmetricMatrix& S) const;
    SymmetricMatrix conjugate_diag(const DiagonalVector& D) const;

    // R^T S R where R = first n-1 columns: leading block of conjugate(S)
    SymmetricMatrix reduce(const SymmetricMatrix& S) const;
    SymmetricMatrix reduce_diag(const DiagonalVector& D) const;

private:
    SymmetricMatrix conjugate_impl(const SymmetricMatrix* S,
                                   const DiagonalVector* D,
                                   std::size_t outDim) const;
    std::size_t n_;
    std::vector<double> u_;
    double beta_;
};

SymmetricMatrix sample_goe(std::size_t n, const SeedPath& seed);

// Laplacian D_A - A: diagonal entry i becomes the off-diagonal row sum
SymmetricMatrix laplacian_of(const SymmetricMatrix& A);

struct Surrogate {
    DiagonalVector D;
    SymmetricMatrix A;
    SymmetricMatrix L; // diag(D) - A
};
Surrogate sample_surrogate(std::size_t n, const SeedPath& seed);

// Only the diagonal of L; avoids materializing A when just D is needed.
DiagonalVector sample_surrogate_diagonal(std::size_t n, const SeedPath& seed);

OrthogonalReducer build_reducer(std::size_t n);

// Coupled ingredients of the reduction chain at dimension n:
//   A'   : (n-1)x(n-1) GOE
//   Dt   : n iid N(0, n/(n-1))                      (D-tilde)
//   g    : N(0, 1/(n-1)) scalar
//   Y,g' : coupling column/corner making
//          A := sqrt((n-1)/n) [[A', Y],[Y^T, g']] an n-dim GOE
// with D := sqrt((n-1)/n) * Dt an iid standard normal diagonal.
struct ReductionSample {
    std::size_t n;
    SymmetricMatrix Ap;
    DiagonalVector Dt;
    double g;
    std::vector<double> Y;
    double gCorner;

    SymmetricMatrix W(const OrthogonalReducer& red) const;       // A' + sqrt((n-1)/n) R^T Dt R
    SymmetricMatrix Wprime(const OrthogonalReducer& red) const;  // A' + R^T Dt R + g I
    DiagonalVector D() const;                                    // sqrt((n-1)/n) * Dt
    SymmetricMatrix A() const;                                   // the coupled n-dim GOE
};
ReductionSample sample_reduction_chain(std::size_t n, const SeedPath& seed);

// W' of Lemma-2.2 form; dimension n-1
SymmetricMatrix sample_reduced_model(std::size_t n, const SeedPath& seed);

struct SigmaPair {
    SymmetricMatrix Sigma;
    SymmetricMatrix SigmaHalf;
};
// Covariance of the Laplacian diagonal: Sigma = ((n-2)/n) I + (1/n) J,
// with closed-form square root a*I + b*J, a = sqrt((n-2)/n),
// b = (sqrt((2n-2)/n) - a)/n.
SigmaPair sigma_and_sqrt(std::size_t n);

double max_diagonal(const SymmetricMatrix& S);

} // namespace lapspec
