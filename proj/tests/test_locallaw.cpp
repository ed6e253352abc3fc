#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "lapspec/eigensolve.hpp"
#include "lapspec/freeconv.hpp"
#include "lapspec/locallaw.hpp"
#include "lapspec/rand_models.hpp"

using namespace lapspec;

namespace {

// dense complex resolvent (S - z I)^{-1} by Gaussian elimination with
// partial pivoting; test oracle only
std::vector<Complex> resolvent(const SymmetricMatrix& S, Complex z) {
    const std::size_t n = S.dim();
    std::vector<Complex> a(n * 2 * n, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i * 2 * n + j] = S(i, j);
        a[i * 2 * n + i] -= z;
        a[i * 2 * n + n + i] = 1.0;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r * 2 * n + c]) > std::abs(a[p * 2 * n + c])) p = r;
        if (p != c)
            for (std::size_t j = 0; j < 2 * n; ++j)
                std::swap(a[c * 2 * n + j], a[p * 2 * n + j]);
        const Complex piv = a[c * 2 * n + c];
        for (std::size_t j = 0; j < 2 * n; ++j) a[c * 2 * n + j] /= piv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const Complex f = a[r * 2 * n + c];
            if (f == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < 2 * n; ++j)
                a[r * 2 * n + j] -= f * a[c * 2 * n + j];
        }
    }
    std::vector<Complex> G(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) G[i * n + j] = a[i * 2 * n + n + j];
    return G;
}

} // namespace

TEST_CASE("empirical transforms: atoms and domain errors") {
    Spectrum one;
    one.values = {0.0};
    CHECK(std::abs(empirical_m(one, Complex(0.0, 1.0)) - Complex(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(empirical_s({0.0, 0.0}, Complex(0.0, 1.0)) - Complex(0.0, 1.0)) <
          1e-15);
    CHECK_THROWS_AS((void)empirical_m(one, Complex(0.0, -1.0)), std::domain_error);
    CHECK_THROWS_AS((void)empirical_s({0.0}, Complex(0.0, 0.0)), std::domain_error);
}

TEST_CASE("empirical_m equals the explicit resolvent trace, n <= 6") {
    for (std::size_t n : {2UL, 3UL, 4UL, 5UL, 6UL}) {
        const SymmetricMatrix L = laplacian_of(sample_goe(n, SeedPath(n)));
        const Spectrum spec = eigenvalues(L);
        for (Complex z : {Complex(0.3, 0.8), Complex(-1.1, 0.05), Complex(2.0, 2.0)}) {
            const auto G = resolvent(L, z);
            Complex tr(0.0, 0.0);
            for (std::size_t i = 0; i < n; ++i) tr += G[i * n + i];
            CHECK(std::abs(empirical_m(spec, z) - tr / double(n)) < 1e-12);
            CHECK(empirical_m(spec, z).imag() > 0.0);
        }
    }
}

TEST_CASE("Ward identity on explicit 4x4 resolvents") {
    const std::size_t n = 4;
    const SymmetricMatrix L = laplacian_of(sample_goe(n, SeedPath(44)));
    for (Complex z : {Complex(0.5, 0.3), Complex(-0.7, 1.2)}) {
        const auto G = resolvent(L, z);
        for (std::size_t i = 0; i < n; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < n; ++j) sum += std::norm(G[i * n + j]);
            CHECK(std::fabs(sum - G[i * n + i].imag() / z.imag()) < 1e-11);
        }
    }
}

TEST_CASE("empirical_s matches the Gaussian transform at large n") {
    const std::size_t n = 100000;
    Rng rng(SeedPath(55));
    DiagonalVector D(n);
    for (auto& d : D) d = rng.gaussian();
    const Complex z(1.0, 1.0);
    const double tol = 5.0 / std::sqrt(double(n)) / z.imag();
    CHECK(std::abs(empirical_s(D, z) - gaussian_stieltjes(z)) < tol);
    // conjugation symmetry under D -> -D, E -> -E
    DiagonalVector Dneg(n);
    for (std::size_t i = 0; i < n; ++i) Dneg[i] = -D[i];
    CHECK(std::abs(empirical_s(Dneg, Complex(-1.0, 1.0)) +
                   std::conj(empirical_s(D, z))) < 1e-13);
}

TEST_CASE("spectral domain construction") {
    const std::size_t n = 1000;
    const double delta = 0.1;
    const double lo = std::sqrt((2.0 - delta) * std::log(double(n)));
    const double hi = std::sqrt(3.0 * std::log(double(n)));
    for (DomainKind kind : {DomainKind::S, DomainKind::STilde, DomainKind::SHat}) {
        const SpectralDomain d = build_domain(delta, n, kind, 64);
        REQUIRE(d.gridE.size() == 64);
        CHECK(d.gridE.front() == doctest::Approx(lo).epsilon(1e-14));
        CHECK(d.gridE.back() == doctest::Approx(hi).epsilon(1e-14));
    }
    CHECK(build_domain(delta, n, DomainKind::STilde, 16).gridEta ==
          std::vector<double>{std::pow(double(n), -0.25)});
    CHECK(build_domain(delta, n, DomainKind::SHat, 16).gridEta ==
          std::vector<double>{std::sqrt(2.0) * std::pow(double(n), -0.25)});
    const auto s = build_domain(delta, n, DomainKind::S, 16);
    CHECK(s.gridEta.front() == doctest::Approx(std::pow(double(n), -0.25)));
    CHECK(s.gridEta.back() == doctest::Approx(1.0));
    CHECK_THROWS_AS((void)build_domain(0.0, n, DomainKind::S, 16),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)build_domain(0.5, n, DomainKind::S, 16),
                    std::invalid_argument);
    CHECK(domain_kind_name(DomainKind::SHat) == std::string("S-hat"));
}

TEST_CASE("diagnostic functional: degenerate draws give zero concentration") {
    const std::size_t n = 30;
    Rng rng(SeedPath(66));
    DiagonalVector D(n);
    for (auto& d : D) d = rng.gaussian();
    const SpectralDomain dom = build_domain(0.1, n, DomainKind::STilde, 8);
    const auto pts = domain_points(dom);
    Spectrum spec = eigenvalues(laplacian_of(sample_goe(n, SeedPath(67))));
    std::vector<std::vector<Complex>> mPerDraw(
        5, std::vector<Complex>(pts.size()));
    for (auto& row : mPerDraw)
        for (std::size_t p = 0; p < pts.size(); ++p)
            row[p] = empirical_m(spec, pts[p]);
    CHECK(diagnostic_sup_from_m(DiagnosticKind::Concentration, mPerDraw, D, dom) ==
          doctest::Approx(0.0).epsilon(1e-30));
    CHECK(diagnostic_sup_from_m(DiagnosticKind::LocalLaw, mPerDraw, D, dom) >= 0.0);
}

TEST_CASE("diagnostics run end to end and report their inputs") {
    const std::size_t n = 60;
    Rng rng(SeedPath(68));
    DiagonalVector D(n);
    for (auto& d : D) d = rng.gaussian();
    const SpectralDomain dom = build_domain(0.2, n, DomainKind::SHat, 8);
    const LocalLawDiagnostic ll = locallaw_diagnostic(D, 4, dom, SeedPath(69));
    const LocalLawDiagnostic cc = concentration_diagnostic(D, 4, dom, SeedPath(69));
    CHECK(ll.n == n);
    CHECK(ll.supValue >= 0.0);
    CHECK(cc.supValue >= 0.0);
    CHECK(ll.kind == "S-hat");
    CHECK(ll.resamples == 4);
    const std::string j = ll.to_json();
    CHECK(j.find("\"supValue\"") != std::string::npos);
    CHECK(j.find("\"kind\":\"S-hat\"") != std::string::npos);
}

TEST_CASE("diagonal count and spacing helpers") {
    CHECK(count_large_diagonal({0.0, 0.0, 0.0}, 0.5) == 0);
    const double thr = std::sqrt(1.5 * std::log(4.0));
    CHECK(count_large_diagonal({thr + 0.01, thr - 0.01, -5.0, thr}, 0.5) == 2);
    CHECK_THROWS_AS((void)count_large_diagonal({0.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)count_large_diagonal({0.0}, 2.0), std::invalid_argument);

    Spectrum spec;
    spec.values = {3.0, 2.0, 2.0, 1.0};
    const auto gaps = eigenvalue_spacings(spec, 3);
    REQUIRE(gaps.size() == 3);
    CHECK(gaps[0] == 1.0);
    CHECK(gaps[1] == 0.0);
    CHECK(gaps[2] == 1.0);
    CHECK_THROWS_AS((void)eigenvalue_spacings(spec, 4), std::invalid_argument);
}
