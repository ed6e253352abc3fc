#include "lapspec/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace lapspec {

namespace {

inline double hypot2(double a, double b) { return std::hypot(a, b); }

// Householder reduction to tridiagonal form, operating on a full row-major
// symmetric buffer. The matvec and rank-2 update run over contiguous full
// rows (this is the Monte Carlo hot path; vectorizable stride-1 loops beat
// packed-triangle indexing by a wide margin at n ~ 2000).
// On exit, if wantQ, `a` holds the orthogonal Q with S = Q T Q^T.
void householder(std::vector<double>& a, std::size_t n,
                 std::vector<double>& d, std::vector<double>& e, bool wantQ) {
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    if (n == 1) {
        d[0] = a[0];
        if (wantQ) a[0] = 1.0;
        return;
    }
    std::vector<double> q(n, 0.0);                // rank-2 partner vector
    for (std::size_t i = n - 1; i >= 1; --i) {
        const std::size_t l = i;                  // active prefix [0, l)
        double h = 0.0;
        if (l > 1) {
            double scale = 0.0;
            double* ri = a.data() + i * n;
            for (std::size_t k = 0; k < l; ++k) scale += std::fabs(ri[k]);
            if (scale == 0.0) {
                e[i] = ri[l - 1];
            } else {
                for (std::size_t k = 0; k < l; ++k) {
                    ri[k] /= scale;
                    h += ri[k] * ri[k];
                }
                double f = ri[l - 1];
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                ri[l - 1] = f - g;                // u stored in row i
                f = 0.0;
                for (std::size_t j = 0; j < l; ++j) {
                    if (wantQ) a[j * n + i] = ri[j] / h;
                    double s = 0.0;
                    const double* rj = a.data() + j * n;
                    for (std::size_t k = 0; k < l; ++k) s += rj[k] * ri[k];
                    q[j] = s / h;
                    f += q[j] * ri[j];
                }
                const double hh = f / (h + h);
                for (std::size_t j = 0; j < l; ++j) q[j] -= hh * ri[j];
                for (std::size_t j = 0; j < l; ++j) {
                    const double uj = ri[j], qj = q[j];
                    double* rj = a.data() + j * n;
                    for (std::size_t k = 0; k < l; ++k)
                        rj[k] -= uj * q[k] + qj * ri[k];
                }
            }
        } else {
            e[i] = a[i * n];                      // single remaining element
        }
        d[i] = h;                                 // h stashed for the Q pass
    }
    d[0] = 0.0;
    e[0] = 0.0;
    if (!wantQ) {
        for (std::size_t i = 0; i < n; ++i) d[i] = a[i * n + i];
        // shift offdiag down one slot: e[i] couples (i, i+1)
        for (std::size_t i = 0; i + 1 < n; ++i) e[i] = e[i + 1];
        e[n - 1] = 0.0;
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && d[i] != 0.0) {
            for (std::size_t j = 0; j < i; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k < i; ++k) g += a[i * n + k] * a[k * n + j];
                for (std::size_t k = 0; k < i; ++k) a[k * n + j] -= g * a[k * n + i];
            }
        }
        d[i] = a[i * n + i];
        a[i * n + i] = 1.0;
        for (std::size_t j = 0; j < i; ++j) a[j * n + i] = a[i * n + j] = 0.0;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) e[i] = e[i + 1];
    e[n - 1] = 0.0;
}

// Implicit-shift QL with Wilkinson shifts. d/e overwritten; e in the
// (i, i+1) convention. If z is non-null (row-major n*n) its columns are
// rotated into eigenvectors.
void tqli(std::vector<double>& d, std::vector<double>& e, std::size_t n,
          std::vector<double>* z) {
    const double eps = std::numeric_limits<double>::epsilon();
    if (n <= 1) return;
    for (std::size_t l = 0; l < n; ++l) {
        std::size_t iter = 0;
        for (;;) {
            std::size_t m = l;
            for (; m + 1 < n; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (++iter > 50)
                throw std::runtime_error("eigensolve: QL failed to converge at index " +
                                         std::to_string(l));
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);       // Wilkinson shift
            double r = hypot2(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
            double s = 1.0, c = 1.0, p = 0.0;
            bool brokeEarly = false;
            for (std::size_t i = m; i-- > l;) {
                double f = s * e[i];
                const double b = c * e[i];
                r = hypot2(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    brokeEarly = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if (z) {
                    double* zd = z->data();
                    for (std::size_t k = 0; k < n; ++k) {
                        f = zd[k * n + i + 1];
                        zd[k * n + i + 1] = s * zd[k * n + i] + c * f;
                        zd[k * n + i] = c * zd[k * n + i] - s * f;
                    }
                }
            }
            if (brokeEarly) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

} // namespace

Tridiagonal tridiagonalize(const SymmetricMatrix& S, bool wantQ) {
    const std::size_t n = S.dim();
    std::vector<double> a = S.to_full();
    Tridiagonal T;
    T.n = n;
    householder(a, n, T.diag, T.offdiag, wantQ);
    T.offdiag.resize(n > 1 ? n - 1 : 0);
    if (wantQ) T.Q = std::move(a);
    return T;
}

std::vector<double> tri_eigenvalues_unsorted(const Tridiagonal& T,
                                             std::vector<double>* accumulate) {
    std::vector<double> d = T.diag;
    std::vector<double> e = T.offdiag;
    e.resize(T.n, 0.0);
    tqli(d, e, T.n, accumulate);
    return d;
}

Spectrum tri_eigenvalues(const Tridiagonal& T) {
    std::vector<double> d = tri_eigenvalues_unsorted(T);
    std::sort(d.begin(), d.end(), std::greater<double>());
    return Spectrum{std::move(d)};
}

std::size_t tri_count_below(const Tridiagonal& T, double x) {
    // LDL^T sign count; pivot floor keeps the recurrence finite
    const double tiny = 1e-300;
    std::size_t count = 0;
    double qv = T.diag[0] - x;
    if (qv < 0.0) ++count;
    for (std::size_t i = 1; i < T.n; ++i) {
        if (qv == 0.0) qv = tiny;
        const double ei = T.offdiag[i - 1];
        qv = (T.diag[i] - x) - ei * ei / qv;
        if (qv < 0.0) ++count;
    }
    return count;
}

std::size_t tri_count_at_least(const Tridiagonal& T, double x) {
    return T.n - tri_count_below(T, x);
}

Spectrum tri_top_k(const Tridiagonal& T, std::size_t k) {
    const std::size_t n = T.n;
    if (k < 1 || k > n) throw std::invalid_argument("tri_top_k: k out of range");
    double lo = T.diag[0], hi = T.diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        const double el = i > 0 ? std::fabs(T.offdiag[i - 1]) : 0.0;
        const double er = i + 1 < n ? std::fabs(T.offdiag[i]) : 0.0;
        lo = std::min(lo, T.diag[i] - el - er);
        hi = std::max(hi, T.diag[i] + el + er);
    }
    Spectrum out;
    out.values.resize(k);
    double upper = hi;
    for (std::size_t j = 0; j < k; ++j) {
        // smallest x with count_below(x) >= n - j is the j-th largest
        double a = lo, b = upper;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (tri_count_below(T, mid) >= n - j) b = mid;
            else a = mid;
        }
        out.values[j] = 0.5 * (a + b);
        upper = b; // eigenvalues are ordered; shrink the bracket
    }
    return out;
}

Spectrum eigenvalues(const SymmetricMatrix& S) {
    return tri_eigenvalues(tridiagonalize(S));
}

Spectrum top_k_eigenvalues(const SymmetricMatrix& S, std::size_t k) {
    if (k < 1 || k > S.dim()) throw std::invalid_argument("top_k_eigenvalues: k out of range");
    return tri_top_k(tridiagonalize(S), k);
}

EigenSystem eigen_system(const SymmetricMatrix& S) {
    const std::size_t n = S.dim();
    Tridiagonal T = tridiagonalize(S, true);
    std::vector<double> z = T.Q;
    std::vector<double> d = tri_eigenvalues_unsorted(T, &z);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return d[i] > d[j]; });
    EigenSystem es;
    es.n = n;
    es.values.values.resize(n);
    es.vectors.resize(n * n);
    for (std::size_t c = 0; c < n; ++c) {
        es.values.values[c] = d[order[c]];
        for (std::size_t r = 0; r < n; ++r)
            es.vectors[r * n + c] = z[r * n + order[c]];
    }
    return es;
}

} // namespace lapspec
