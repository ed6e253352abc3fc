#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

namespace lapspec {

// Adaptive Gauss-Kronrod (G7/K15) on a real interval. Error estimate per
// panel is |K15 - G7|; panels split until the estimate clears
// max(abstol_share, reltol*|panel|). Plain recursive bisection.
class GaussKronrod {
public:
    static double integrate(const std::function<double(double)>& f,
                            double a, double b,
                            double abstol = 1e-12, double reltol = 1e-12,
                            int maxDepth = 48) {
        return adapt(f, a, b, abstol, reltol, maxDepth);
    }

    struct Panel { double value; double error; };

    static Panel panel(const std::function<double(double)>& f, double a, double b) {
        static const double xgk[8] = {
            0.991455371120812639206854697526329,
            0.949107912342758524526189684047851,
            0.864864423359769072789712788640926,
            0.741531185599394439863864773280788,
            0.586087235467691130294144838258730,
            0.405845151377397166906606412076961,
            0.207784955007898467600689403773245,
            0.000000000000000000000000000000000};
        static const double wgk[8] = {
            0.022935322010529224963732008058970,
            0.063092092629978553290700663189204,
            0.104790010322250183839876322541518,
            0.140653259715525918745189590510238,
            0.169004726639267902826583426598550,
            0.190350578064785409913256402421014,
            0.204432940075298892414161999234649,
            0.209482141084727828012999174891714};
        static const double wg[4] = {
            0.129484966168869693270611432679082,
            0.279705391489276667901467771423780,
            0.381830050505118944950369775488975,
            0.417959183673469387755102040816327};
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        const double fc = f(c);
        double resK = wgk[7] * fc;
        double resG = wg[3] * fc;
        for (int j = 0; j < 7; ++j) {
            const double x = h * xgk[j];
            const double fs = f(c - x) + f(c + x);
            resK += wgk[j] * fs;
            if (j % 2 == 1) resG += wg[j / 2] * fs;
        }
        return Panel{resK * h, std::fabs((resK - resG) * h)};
    }

private:
    static double adapt(const std::function<double(double)>& f, double a, double b,
                        double abstol, double reltol, int depth) {
        Panel p = panel(f, a, b);
        if (depth <= 0 || p.error <= abstol + reltol * std::fabs(p.value))
            return p.value;
        const double c = 0.5 * (a + b);
        return adapt(f, a, c, 0.5 * abstol, reltol, depth - 1) +
               adapt(f, c, b, 0.5 * abstol, reltol, depth - 1);
    }
};

} // namespace lapspec
