#include "relwave/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace relwave {

namespace {

// 15-point Kronrod abscissae/weights with embedded 7-point Gauss rule,
// positive half of [-1,1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
    double k15;
    double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double k15 = kWgk[7] * fc;
    double g7 = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double fs = f(c - dx) + f(c + dx);
        k15 += kWgk[i] * fs;
        if (i % 2 == 1) g7 += kWg[i / 2] * fs;
    }
    k15 *= h;
    g7 *= h;
    return {k15, std::abs(k15 - g7)};
}

double integrate_rec(const std::function<double(double)>& f, double a, double b,
                     const PanelResult& whole, double tol, int depth, int max_depth) {
    if (whole.err <= tol || whole.err <= 1e-16 * std::abs(whole.k15)) return whole.k15;
    if (depth >= max_depth)
        throw std::runtime_error("integrate_adaptive: no convergence on [" +
                                 std::to_string(a) + ", " + std::to_string(b) +
                                 "], error estimate " + std::to_string(whole.err));
    const double m = 0.5 * (a + b);
    const PanelResult left = gk15(f, a, m), right = gk15(f, m, b);
    return integrate_rec(f, a, m, left, 0.5 * tol, depth + 1, max_depth) +
           integrate_rec(f, m, b, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    const PanelResult whole = gk15(f, a, b);
    const double tol = std::max(abs_tol, rel_tol * std::abs(whole.k15));
    return integrate_rec(f, a, b, whole, tol, 0, max_depth);
}

double golden_section_max(const std::function<double(double)>& f, double a, double b,
                          double tol) {
    if (!(b > a)) throw std::invalid_argument("golden_section_max: need b > a");
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

LineFit least_squares_line(std::span<const double> x, std::span<const double> y) {
    const int n = static_cast<int>(x.size());
    if (n != static_cast<int>(y.size()))
        throw std::invalid_argument("least_squares_line: size mismatch");
    if (n < 2) throw std::domain_error("least_squares_line: need at least 2 points");
    double xm = 0, ym = 0;
    for (int i = 0; i < n; ++i) {
        xm += x[i];
        ym += y[i];
    }
    xm /= n;
    ym /= n;
    double sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - xm) * (x[i] - xm);
        sxy += (x[i] - xm) * (y[i] - ym);
    }
    double scale = 0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, x[i] * x[i]);
    if (sxx <= 1e-14 * std::max(scale, 1e-300) * n)
        throw std::domain_error("least_squares_line: degenerate design (x values coincide)");

    LineFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = ym - fit.slope * xm;
    double rss = 0;
    for (int i = 0; i < n; ++i) {
        const double r = y[i] - fit.intercept - fit.slope * x[i];
        rss += r * r;
    }
    fit.rms_residual = std::sqrt(rss / n);
    if (n > 2) {
        const double s2 = rss / (n - 2);
        fit.se_slope = std::sqrt(s2 / sxx);
        fit.se_intercept = std::sqrt(s2 * (1.0 / n + xm * xm / sxx));
    }
    return fit;
}

}  // namespace relwave
