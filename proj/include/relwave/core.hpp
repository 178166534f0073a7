#pragma once
#include <functional>

#include "relwave/vec3.hpp"

namespace relwave {

/// Model constants. Default model units: c = 1, sigma = 1.
/// sigma is the phase-space action quantum (hbar for a quantum particle).
struct Units {
    double c = 1.0;
    double sigma = 1.0;

    Units() = default;
    Units(double c_, double sigma_);
};

/// A point of the 8-dimensional extended phase space plus the universal-time
/// stamp u. Conventions: q0 = c*t, p0 = -E/c, so physical (E > 0) states have
/// p0 < 0. Off-shell and spacelike values are representable; only operations
/// that need the timelike condition enforce it.
struct ExtendedState {
    double q0 = 0.0;   // time coordinate c*t [length]
    Vec3 q{};          // position [length]
    double p0 = 0.0;   // energy coordinate -E/c [momentum]
    Vec3 p{};          // momentum [momentum]
    double u = 0.0;    // universal time [time]

    bool physical() const { return p0 < 0.0; }
    double timelike_gap() const { return p0 * p0 - norm2(p); }  // p0^2 - |p|^2
};

/// Positive-energy on-shell state: p0 = -sqrt(m0^2 c^2 + |p|^2).
ExtendedState on_shell_state(double m0, double c, const Vec3& p, double q0 = 0.0,
                             const Vec3& q = {}, double u = 0.0);

/// Flat coordinate access in the order (q0, q1, q2, q3, p0, p1, p2, p3).
double extended_coord(const ExtendedState& x, int i);
void set_extended_coord(ExtendedState& x, int i, double v);

using Observable = std::function<double(const ExtendedState&)>;

/// Default central-difference step: 1e-5 * max(1, |x|_inf).
double default_fd_step(const ExtendedState& x);

/// Central-difference extended Poisson bracket
///   {f,g}^e = sum_mu df/dq_mu dg/dp_mu - df/dp_mu dg/dq_mu,   mu = 0..3,
/// with O(h^2) truncation error. h <= 0 selects the default step.
/// Throws std::domain_error if an observable evaluates non-finite.
double poisson_bracket_numeric(const Observable& f, const Observable& g,
                               const ExtendedState& x, double h = 0.0);

/// Mass-shell residual p0^2 - |p|^2 - m0^2 c^2; zero exactly on shell.
double mass_shell_residual(const ExtendedState& x, double m0, double c);

}  // namespace relwave
