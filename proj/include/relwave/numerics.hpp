#pragma once
#include <functional>
#include <span>
#include <vector>

namespace relwave {

/// Adaptive quadrature on [a,b] with an embedded 7/15-point Gauss-Kronrod
/// rule and recursive bisection. Throws std::runtime_error with interval
/// diagnostics if the requested tolerance cannot be reached.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-10, double abs_tol = 1e-300,
                          int max_depth = 48);

/// Maximum of a unimodal function on [a,b] by golden-section search.
/// Returns the abscissa of the maximum within tol.
double golden_section_max(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-8);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
    double se_slope = 0.0;      // OLS standard error of the slope
    double se_intercept = 0.0;  // OLS standard error of the intercept
    int n = 0;
};

/// Ordinary least squares y = intercept + slope * x.
/// Throws std::domain_error for n < 2 or a degenerate design (all x equal).
LineFit least_squares_line(std::span<const double> x, std::span<const double> y);

}  // namespace relwave
