#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lapspec/eigensolve.hpp"
#include "lapspec/freeconv.hpp"
#include "lapspec/matrix.hpp"
#include "lapspec/seed.hpp"

namespace lapspec {

enum class DomainKind { S, STilde, SHat };

// rectangle with Re z in [sqrt((2-delta) log n), sqrt(3 log n)] and the
// kind-specific eta rule: S-tilde eta = n^{-1/4}, S-hat eta = sqrt2 n^{-1/4},
// S a grid spanning [n^{-1/4}, 1]
struct SpectralDomain {
    double delta = 0.1;
    std::size_t n = 0;
    DomainKind kind = DomainKind::STilde;
    std::vector<double> gridE;
    std::vector<double> gridEta;
};

SpectralDomain build_domain(double delta, std::size_t n, DomainKind kind,
                            std::size_t gridSize);

struct LocalLawDiagnostic {
    std::size_t n = 0;
    double delta = 0.0;
    double supValue = 0.0;
    std::size_t resamples = 0;
    std::size_t gridSize = 0;
    std::string kind;
    std::uint64_t seed = 0;

    std::string to_json() const; // {n, delta, kind, supValue, resamples, gridSize, seed}
};

Complex empirical_m(const Spectrum& spectrum, Complex z); // (1/n) sum 1/(lambda_j - z)
Complex empirical_s(const DiagonalVector& D, Complex z);  // (1/n) sum 1/(D_i - z)

enum class DiagnosticKind { LocalLaw, Concentration };

// shared engine: D fixed, `aSamples` GOE draws; draw 0 is held out, the mean
// of the rest estimates E_A m_n. Functionals over the grid:
//   LocalLaw:      n*eta*| m_held(z) - s_n(z + mean_m(z)) |
//   Concentration: n*eta*| m_held(z) - mean_m(z) |
LocalLawDiagnostic run_diagnostic(DiagnosticKind which, const DiagonalVector& D,
                                  std::size_t aSamples, const SpectralDomain& domain,
                                  const SeedPath& seed);

LocalLawDiagnostic locallaw_diagnostic(const DiagonalVector& D, std::size_t aSamples,
                                       const SpectralDomain& domain, const SeedPath& seed);
LocalLawDiagnostic concentration_diagnostic(const DiagonalVector& D, std::size_t aSamples,
                                            const SpectralDomain& domain, const SeedPath& seed);

// functional evaluation from precomputed per-draw m_n values (index 0 held
// out), exposed so degenerate inputs are testable and so callers can share
// one set of spectra between both diagnostics
double diagnostic_sup_from_m(DiagnosticKind which,
                             const std::vector<std::vector<Complex>>& mPerDraw,
                             const DiagonalVector& D, const SpectralDomain& domain);

// grid points of a domain in row-major (eta, E) order
std::vector<Complex> domain_points(const SpectralDomain& domain);

std::size_t count_large_diagonal(const DiagonalVector& D, double delta);

std::vector<double> eigenvalue_spacings(const Spectrum& spectrum, std::size_t k);

std::string domain_kind_name(DomainKind k);

} // namespace lapspec
