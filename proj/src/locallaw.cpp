#include "lapspec/locallaw.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "lapspec/rand_models.hpp"

namespace lapspec {

std::string domain_kind_name(DomainKind k) {
    switch (k) {
        case DomainKind::S: return "S";
        case DomainKind::STilde: return "S-tilde";
        case DomainKind::SHat: return "S-hat";
    }
    return "?";
}

SpectralDomain build_domain(double delta, std::size_t n, DomainKind kind,
                            std::size_t gridSize) {
    if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("build_domain: delta out of (0, 1/2)");
    if (n < 3) throw std::invalid_argument("build_domain: need n >= 3");
    if (gridSize < 2) throw std::invalid_argument("build_domain: need gridSize >= 2");
    const double logn = std::log(static_cast<double>(n));
    const double eLo = std::sqrt((2.0 - delta) * logn);
    const double eHi = std::sqrt(3.0 * logn);
    SpectralDomain d;
    d.delta = delta;
    d.n = n;
    d.kind = kind;
    d.gridE.resize(gridSize);
    for (std::size_t i = 0; i < gridSize; ++i)
        d.gridE[i] = eLo + (eHi - eLo) * static_cast<double>(i) / static_cast<double>(gridSize - 1);
    const double etaBase = std::pow(static_cast<double>(n), -0.25);
    switch (kind) {
        case DomainKind::STilde: d.gridEta = {etaBase}; break;
        case DomainKind::SHat: d.gridEta = {std::sqrt(2.0) * etaBase}; break;
        case DomainKind::S: {
            // geometric ladder from n^{-1/4} to 1
            const std::size_t m = 8;
            d.gridEta.resize(m);
            for (std::size_t i = 0; i < m; ++i)
                d.gridEta[i] = etaBase * std::pow(1.0 / etaBase,
                                                  static_cast<double>(i) / static_cast<double>(m - 1));
            break;
        }
    }
    return d;
}

std::vector<Complex> domain_points(const SpectralDomain& domain) {
    std::vector<Complex> pts;
    pts.reserve(domain.gridE.size() * domain.gridEta.size());
    for (double eta : domain.gridEta)
        for (double E : domain.gridE) pts.emplace_back(E, eta);
    return pts;
}

Complex empirical_m(const Spectrum& spectrum, Complex z) {
    if (z.imag() <= 0.0) throw std::domain_error("empirical_m: requires Im z > 0");
    Complex acc(0.0, 0.0);
    for (double lam : spectrum.values) acc += 1.0 / (lam - z);
    return acc / static_cast<double>(spectrum.size());
}

Complex empirical_s(const DiagonalVector& D, Complex z) {
    if (z.imag() <= 0.0) throw std::domain_error("empirical_s: requires Im z > 0");
    Complex acc(0.0, 0.0);
    for (double d : D) acc += 1.0 / (d - z);
    return acc / static_cast<double>(D.size());
}

double diagnostic_sup_from_m(DiagnosticKind which,
                             const std::vector<std::vector<Complex>>& mPerDraw,
                             const DiagonalVector& D, const SpectralDomain& domain) {
    if (mPerDraw.size() < 2)
        throw std::invalid_argument("diagnostic_sup_from_m: need >= 2 draws");
    const std::vector<Complex> pts = domain_points(domain);
    const double n = static_cast<double>(D.size());
    double sup = 0.0;
    for (std::size_t p = 0; p < pts.size(); ++p) {
        Complex mean(0.0, 0.0);
        for (std::size_t d = 1; d < mPerDraw.size(); ++d) mean += mPerDraw[d][p];
        mean /= static_cast<double>(mPerDraw.size() - 1);
        const Complex held = mPerDraw[0][p];
        Complex diff;
        if (which == DiagnosticKind::Concentration) {
            diff = held - mean;
        } else {
            diff = held - empirical_s(D, pts[p] + mean);
        }
        sup = std::max(sup, n * pts[p].imag() * std::abs(diff));
    }
    return sup;
}

LocalLawDiagnostic run_diagnostic(DiagnosticKind which, const DiagonalVector& D,
                                  std::size_t aSamples, const SpectralDomain& domain,
                                  const SeedPath& seed) {
    if (aSamples < 2) throw std::invalid_argument("run_diagnostic: need aSamples >= 2");
    const std::size_t n = D.size();
    const std::vector<Complex> pts = domain_points(domain);
    std::vector<std::vector<Complex>> mPerDraw(aSamples);
    for (std::size_t dIdx = 0; dIdx < aSamples; ++dIdx) {
        SymmetricMatrix A = sample_goe(n, seed.child(dIdx));
        SymmetricMatrix L = A;
        for (auto& v : L.packed()) v = -v;
        for (std::size_t i = 0; i < n; ++i) L.set(i, i, D[i] - A(i, i));
        const Spectrum spec = tri_eigenvalues(tridiagonalize(L));
        auto& row = mPerDraw[dIdx];
        row.resize(pts.size());
        for (std::size_t p = 0; p < pts.size(); ++p) row[p] = empirical_m(spec, pts[p]);
    }
    LocalLawDiagnostic out;
    out.n = n;
    out.delta = domain.delta;
    out.supValue = diagnostic_sup_from_m(which, mPerDraw, D, domain);
    out.resamples = aSamples;
    out.gridSize = domain.gridE.size();
    out.kind = domain_kind_name(domain.kind);
    out.seed = seed.master;
    return out;
}

LocalLawDiagnostic locallaw_diagnostic(const DiagonalVector& D, std::size_t aSamples,
                                       const SpectralDomain& domain, const SeedPath& seed) {
    return run_diagnostic(DiagnosticKind::LocalLaw, D, aSamples, domain, seed);
}
LocalLawDiagnostic concentration_diagnostic(const DiagonalVector& D, std::size_t aSamples,
                                            const SpectralDomain& domain, const SeedPath& seed) {
    return run_diagnostic(DiagnosticKind::Concentration, D, aSamples, domain, seed);
}

std::string LocalLawDiagnostic::to_json() const {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "{\"n\":%zu,\"delta\":%.17g,\"kind\":\"%s\",\"supValue\":%.17g,"
                  "\"resamples\":%zu,\"gridSize\":%zu,\"seed\":%llu}",
                  n, delta, kind.c_str(), supValue, resamples, gridSize,
                  static_cast<unsigned long long>(seed));
    return buf;
}

std::size_t count_large_diagonal(const DiagonalVector& D, double delta) {
    if (!(delta > 0.0 && delta < 2.0))
        throw std::invalid_argument("count_large_diagonal: delta out of (0, 2)");
    const double thresh =
        std::sqrt((2.0 - delta) * std::log(static_cast<double>(D.size())));
    std::size_t c = 0;
    for (double d : D)
        if (d >= thresh) ++c;
    return c;
}

std::vector<double> eigenvalue_spacings(const Spectrum& spectrum, std::size_t k) {
    if (k >= spectrum.size())
        throw std::invalid_argument("eigenvalue_spacings: k must be < n");
    std::vector<double> gaps(k);
    for (std::size_t j = 0; j < k; ++j)
        gaps[j] = spectrum.values[j] - spectrum.values[j + 1];
    return gaps;
}

} // namespace lapspec
