#include "lapspec/rand_models.hpp"

#include <cmath>
#include <stdexcept>

namespace lapspec {

OrthogonalReducer::OrthogonalReducer(std::size_t n) : n_(n), u_(n) {
    if (n < 2) throw std::invalid_argument("OrthogonalReducer: dim must be >= 2");
    const double invSqrtN = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i + 1 < n; ++i) u_[i] = -invSqrtN;
    u_[n - 1] = 1.0 - invSqrtN;
    beta_ = 1.0 / (1.0 - invSqrtN); // 2/||u||^2, since ||u||^2 = 2(1 - 1/sqrt(n))
}

double OrthogonalReducer::entry(std::size_t i, std::size_t j) const {
    return (i == j ? 1.0 : 0.0) - beta_ * u_[i] * u_[j];
}

// H S H = S - u p^T - p u^T with p = beta*(S u - (beta/2)(u^T S u) u)
SymmetricMatrix OrthogonalReducer::conjugate_impl(const SymmetricMatrix* S,
                                                  const DiagonalVector* D,
                                                  std::size_t outDim) const {
    const std::size_t n = n_;
    std::vector<double> su(n);
    if (S) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += (*S)(i, j) * u_[j];
            su[i] = s;
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) su[i] = (*D)[i] * u_[i];
    }
    double usu = 0.0;
    for (std::size_t i = 0; i < n; ++i) usu += u_[i] * su[i];
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = beta_ * (su[i] - 0.5 * beta_ * usu * u_[i]);

    SymmetricMatrix out(outDim);
    for (std::size_t i = 0; i < outDim; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            double base = S ? (*S)(i, j) : (i == j ? (*D)[i] : 0.0);
            out.set(i, j, base - u_[i] * p[j] - p[i] * u_[j]);
        }
    return out;
}

SymmetricMatrix OrthogonalReducer::conjugate(const SymmetricMatrix& S) const {
    return conjugate_impl(&S, nullptr, n_);
}
SymmetricMatrix OrthogonalReducer::conjugate_diag(const DiagonalVector& D) const {
    if (D.size() != n_) throw std::invalid_argument("conjugate_diag: dimension mismatch");
    return conjugate_impl(nullptr, &D, n_);
}
SymmetricMatrix OrthogonalReducer::reduce(const SymmetricMatrix& S) const {
    return conjugate_impl(&S, nullptr, n_ - 1);
}
SymmetricMatrix OrthogonalReducer::reduce_diag(const DiagonalVector& D) const {
    if (D.size() != n_) throw std::invalid_argument("reduce_diag: dimension mismatch");
    return conjugate_impl(nullptr, &D, n_ - 1);
}

SymmetricMatrix sample_goe(std::size_t n, const SeedPath& seed) {
    if (n == 0) throw std::invalid_argument("sample_goe: dim must be >= 1");
    SymmetricMatrix A(n);
    Rng rng(seed);
    const double offSd = 1.0 / std::sqrt(static_cast<double>(n));
    const double diagSd = std::sqrt(2.0 / static_cast<double>(n));
    auto& a = A.packed();
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j, ++idx)
            a[idx] = rng.gaussian() * (i == j ? diagSd : offSd);
    return A;
}

SymmetricMatrix laplacian_of(const SymmetricMatrix& A) {
    const std::size_t n = A.dim();
    SymmetricMatrix L(n);
    for (std::size_t i = 0; i < n; ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) off += A(i, j);
        L.set(i, i, off);
        for (std::size_t j = 0; j < i; ++j) L.set(i, j, -A(i, j));
    }
    return L;
}

Surrogate sample_surrogate(std::size_t n, const SeedPath& seed) {
    if (n == 0) throw std::invalid_argument("sample_surrogate: dim must be >= 1");
    Rng dRng(seed.child(0));
    DiagonalVector D(n);
    for (auto& v : D) v = dRng.gaussian();
    SymmetricMatrix A = sample_goe(n, seed.child(1));
    SymmetricMatrix L = A;
    {
        auto& l = L.packed();
        for (auto& v : l) v = -v;
        for (std::size_t i = 0; i < n; ++i) L.set(i, i, D[i] - A(i, i));
    }
    return Surrogate{std::move(D), std::move(A), std::move(L)};
}

DiagonalVector sample_surrogate_diagonal(std::size_t n, const SeedPath& seed) {
    if (n == 0) throw std::invalid_argument("sample_surrogate_diagonal: dim must be >= 1");
    Rng dRng(seed.child(0));
    DiagonalVector D(n);
    for (auto& v : D) v = dRng.gaussian();
    return D;
}

OrthogonalReducer build_reducer(std::size_t n) { return OrthogonalReducer(n); }

ReductionSample sample_reduction_chain(std::size_t n, const SeedPath& seed) {
    if (n < 2) throw std::invalid_argument("sample_reduction_chain: dim must be >= 2");
    const std::size_t m = n - 1;
    SymmetricMatrix Ap = sample_goe(m, seed.child(0));
    Rng rng(seed.child(1));
    DiagonalVector Dt(n);
    const double dtSd = std::sqrt(static_cast<double>(n) / static_cast<double>(m));
    for (auto& v : Dt) v = rng.gaussian() * dtSd;
    const double g = rng.gaussian() / std::sqrt(static_cast<double>(m));
    std::vector<double> Y(m);
    const double ySd = 1.0 / std::sqrt(static_cast<double>(m));
    for (auto& v : Y) v = rng.gaussian() * ySd;
    const double gCorner = rng.gaussian() * std::sqrt(2.0 / static_cast<double>(m));
    return ReductionSample{n, std::move(Ap), std::move(Dt), g, std::move(Y), gCorner};
}

SymmetricMatrix ReductionSample::W(const OrthogonalReducer& red) const {
    const std::size_t m = n - 1;
    SymmetricMatrix out = red.reduce_diag(Dt);
    const double c = std::sqrt(static_cast<double>(m) / static_cast<double>(n));
    auto& o = out.packed();
    const auto& a = Ap.packed();
    for (std::size_t idx = 0; idx < o.size(); ++idx) o[idx] = c * o[idx] + a[idx];
    return out;
}

SymmetricMatrix ReductionSample::Wprime(const OrthogonalReducer& red) const {
    const std::size_t m = n - 1;
    SymmetricMatrix out = red.reduce_diag(Dt);
    auto& o = out.packed();
    const auto& a = Ap.packed();
    for (std::size_t idx = 0; idx < o.size(); ++idx) o[idx] += a[idx];
    for (std::size_t i = 0; i < m; ++i) out.add(i, i, g);
    return out;
}

DiagonalVector ReductionSample::D() const {
    const double c = std::sqrt(static_cast<double>(n - 1) / static_cast<double>(n));
    DiagonalVector d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = c * Dt[i];
    return d;
}

SymmetricMatrix ReductionSample::A() const {
    const std::size_t m = n - 1;
    const double c = std::sqrt(static_cast<double>(m) / static_cast<double>(n));
    SymmetricMatrix out(n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= i; ++j) out.set(i, j, c * Ap(i, j));
    for (std::size_t j = 0; j < m; ++j) out.set(m, j, c * Y[j]);
    out.set(m, m, c * gCorner);
    return out;
}

SymmetricMatrix sample_reduced_model(std::size_t n, const SeedPath& seed) {
    if (n < 2) throw std::invalid_argument("sample_reduced_model: dim must be >= 2");
    ReductionSample rs = sample_reduction_chain(n, seed);
    OrthogonalReducer red(n);
    return rs.Wprime(red);
}

SigmaPair sigma_and_sqrt(std::size_t n) {
    if (n < 2) throw std::invalid_argument("sigma_and_sqrt: dim must be >= 2");
    const double dn = static_cast<double>(n);
    SymmetricMatrix Sigma(n), Half(n);
    const double a = std::sqrt((dn - 2.0) / dn);
    const double b = (std::sqrt((2.0 * dn - 2.0) / dn) - a) / dn;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            Sigma.set(i, j, i == j ? (dn - 1.0) / dn : 1.0 / dn);
            Half.set(i, j, (i == j ? a : 0.0) + b);
        }
    return SigmaPair{std::move(Sigma), std::move(Half)};
}

double max_diagonal(const SymmetricMatrix& S) {
    double m = S(0, 0);
    for (std::size_t i = 1; i < S.dim(); ++i)
        if (S(i, i) > m) m = S(i, i);
    return m;
}

} // namespace lapspec
