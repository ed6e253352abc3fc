#include "lapspec/freeconv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace lapspec {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;
constexpr double kPi = 3.14159265358979323846264338327950288;

struct Pair2 { double a = 0.0, b = 0.0; };

// Adaptive G7/K15 for a pair-valued integrand; refinement driven by the
// larger of the two component error estimates.
template <typename F>
Pair2 gk_pair(const F& f, double lo, double hi, double abstol, int depth) {
    static const double xgk[8] = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.0};
    static const double wgk[8] = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static const double wg[4] = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    Pair2 fc = f(c);
    double kA = wgk[7] * fc.a, kB = wgk[7] * fc.b;
    double gA = wg[3] * fc.a, gB = wg[3] * fc.b;
    for (int j = 0; j < 7; ++j) {
        const double x = h * xgk[j];
        Pair2 fm = f(c - x), fp = f(c + x);
        const double sa = fm.a + fp.a, sb = fm.b + fp.b;
        kA += wgk[j] * sa;
        kB += wgk[j] * sb;
        if (j % 2 == 1) { gA += wg[j / 2] * sa; gB += wg[j / 2] * sb; }
    }
    const double errA = std::fabs((kA - gA) * h), errB = std::fabs((kB - gB) * h);
    const double relA = 1e-12 * std::fabs(kA * h), relB = 1e-12 * std::fabs(kB * h);
    if (depth <= 0 ||
        (errA <= abstol + relA && errB <= abstol + relB))
        return Pair2{kA * h, kB * h};
    Pair2 left = gk_pair(f, lo, c, 0.5 * abstol, depth - 1);
    Pair2 right = gk_pair(f, c, hi, 0.5 * abstol, depth - 1);
    return Pair2{left.a + right.a, left.b + right.b};
}

} // namespace

namespace detail {

// Both Biane integrals at once. The integrand has a Lorentzian spike of
// width v at x = u, so we split at |x-u| = c and substitute:
//   core: x = u + v*tan(theta)  (spike becomes flat; exact kernel absorbed)
//   tail: |x-u| = c*e^t         (slow 1/s^2 decay becomes O(1) per unit t)
// Plain fixed-node rules on x cannot see the spike once v << node spacing.
BianeKernel biane_kernel(double u, double v) {
    // both integrals are O(1) near the solution and every consumer tolerance
    // is >= 1e-9, so an absolute floor of 1e-13 is safe; without it, panels
    // where the odd component crosses zero recurse to the depth cap
    constexpr double kAbsTol = 1e-13;
    constexpr int kMaxDepth = 30;
    const double c = std::min(1.0, 16.0 * v);
    const double thetaC = std::atan2(c, v); // atan(c/v), v > 0
    auto core = [&](double theta) {
        const double tn = std::tan(theta);
        const double f = std::exp(-0.5 * (u + v * tn) * (u + v * tn));
        return Pair2{f / v, -tn * f};
    };
    Pair2 coreInt = gk_pair(core, -thetaC, thetaC, kAbsTol, kMaxDepth);

    const double S = std::fabs(u) + 40.0;
    const double T = std::log(S / c);
    auto tail = [&](double t) {
        const double s = c * std::exp(t);
        const double w = s / (s * s + v * v);
        const double fp = std::exp(-0.5 * (u + s) * (u + s));
        const double fm = std::exp(-0.5 * (u - s) * (u - s));
        // ds = s dt already folded in: w = s/(s^2+v^2) carries one factor s
        return Pair2{(fp + fm) * w, (fm - fp) * s * w};
    };
    Pair2 tailInt = gk_pair(tail, 0.0, T, kAbsTol, kMaxDepth);

    return BianeKernel{kInvSqrt2Pi * (coreInt.a + tailInt.a),
                       kInvSqrt2Pi * (coreInt.b + tailInt.b)};
}

double biane_v_threshold(double u, double threshold) {
    // level integral is strictly decreasing in v, +inf at v=0+, < threshold
    // at vHi; 60 bisection steps per the solver contract
    double lo = 0.0;
    double hi = std::max(2.0, std::sqrt(2.0 / threshold));
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (biane_kernel(u, mid).level > threshold) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

double biane_v(double u) { return detail::biane_v_threshold(u, 1.0); }

double lipschitz_region_boundary(double t, double u) {
    if (t < 1.0) throw std::invalid_argument("lipschitz_region_boundary: t must be >= 1");
    return detail::biane_v_threshold(u, 1.0 / t);
}

double biane_psi(double u) {
    const double v = biane_v(u);
    return u + detail::biane_kernel(u, v).shift;
}

DensityGrid density_grid(double uMin, double uMax, std::size_t count) {
    if (!(uMin < uMax)) throw std::invalid_argument("density_grid: need uMin < uMax");
    if (count < 16) throw std::invalid_argument("density_grid: need count >= 16");
    DensityGrid g;
    g.u_nodes.resize(count);
    g.x_nodes.resize(count);
    g.v_values.resize(count);
    g.p_values.resize(count);
    const double h = (uMax - uMin) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = uMin + h * static_cast<double>(i);
        const double v = biane_v(u);
        g.u_nodes[i] = u;
        g.v_values[i] = v;
        g.x_nodes[i] = u + detail::biane_kernel(u, v).shift;
        g.p_values[i] = v / kPi;
        if (i > 0 && !(g.x_nodes[i] > g.x_nodes[i - 1]))
            throw std::runtime_error("density_grid: psi not strictly increasing");
    }
    return g;
}

double density_grid_mass(const DensityGrid& g) {
    double mass = 0.0;
    for (std::size_t i = 1; i < g.x_nodes.size(); ++i)
        mass += 0.5 * (g.p_values[i] + g.p_values[i - 1]) *
                (g.x_nodes[i] - g.x_nodes[i - 1]);
    return mass;
}

std::string density_grid_csv(const DensityGrid& g) {
    std::string out = "u,x,v,p\n";
    char buf[160];
    for (std::size_t i = 0; i < g.u_nodes.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n",
                      g.u_nodes[i], g.x_nodes[i], g.v_values[i], g.p_values[i]);
        out += buf;
    }
    return out;
}

DensityGrid parse_density_grid_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "u,x,v,p")
        throw std::runtime_error("parse_density_grid_csv: bad header");
    DensityGrid g;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double u, x, v, p;
        if (std::sscanf(line.c_str(), "%lg,%lg,%lg,%lg", &u, &x, &v, &p) != 4)
            throw std::runtime_error("parse_density_grid_csv: bad row: " + line);
        g.u_nodes.push_back(u);
        g.x_nodes.push_back(x);
        g.v_values.push_back(v);
        g.p_values.push_back(p);
    }
    return g;
}

Complex solve_m(Complex z, const SolverConfig& cfg) {
    if (z.imag() <= 0.0) throw std::domain_error("solve_m: requires Im z > 0");
    Complex m = -1.0 / z;
    Complex s = gaussian_stieltjes(z + m);
    double res = std::abs(m - s);
    double damp = cfg.damping;
    int it = 0;
    // damped fixed point until the Newton basin, then Newton
    while (res > 1e-6 && it < cfg.maxIter) {
        const Complex mNew = (1.0 - damp) * m + damp * s;
        const Complex sNew = gaussian_stieltjes(z + mNew);
        const double resNew = std::abs(mNew - sNew);
        ++it;
        if (resNew > res) {
            damp = std::max(0.5 * damp, 1.0 / 64.0);
            continue;
        }
        m = mNew;
        s = sNew;
        res = resNew;
        damp = std::min(cfg.damping, 1.25 * damp);
    }
    while (res > cfg.tol && it < cfg.maxIter) {
        const Complex deriv = 1.0 - gaussian_stieltjes_prime(z + m);
        const Complex mNew = m - (m - s) / deriv;
        if (!(mNew.imag() > 0.0) || !(z.imag() + mNew.imag() > 0.0)) break;
        const Complex sNew = gaussian_stieltjes(z + mNew);
        const double resNew = std::abs(mNew - sNew);
        ++it;
        if (resNew >= res) break;
        m = mNew;
        s = sNew;
        res = resNew;
    }
    if (res > cfg.tol)
        throw std::runtime_error("solve_m: no convergence, residual " + std::to_string(res));
    return m;
}

double predict_location(double X, double eta, const SolverConfig& cfg) {
    if (!(X > 1.0)) throw std::invalid_argument("predict_location: requires X > 1");
    if (!(eta > 0.0)) throw std::invalid_argument("predict_location: requires eta > 0");
    auto resid = [&](double E) {
        return X - E - solve_m(Complex(E, eta), cfg).real();
    };
    double lo = X, hi = X + 2.0;
    double flo = resid(lo), fhi = resid(hi);
    if (!(flo > 0.0) || !(fhi < 0.0))
        throw std::runtime_error("predict_location: no sign change in [X, X+2]");
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (resid(mid) > 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace lapspec
