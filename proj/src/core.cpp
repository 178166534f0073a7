#include "relwave/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace relwave {

Units::Units(double c_, double sigma_) : c(c_), sigma(sigma_) {
    if (!(c > 0.0)) throw std::invalid_argument("Units: c must be > 0");
    if (!(sigma > 0.0)) throw std::invalid_argument("Units: sigma must be > 0");
}

ExtendedState on_shell_state(double m0, double c, const Vec3& p, double q0,
                             const Vec3& q, double u) {
    if (!(m0 > 0.0)) throw std::invalid_argument("on_shell_state: m0 must be > 0");
    if (!(c > 0.0)) throw std::invalid_argument("on_shell_state: c must be > 0");
    ExtendedState x;
    x.q0 = q0;
    x.q = q;
    x.p = p;
    x.p0 = -std::sqrt(m0 * m0 * c * c + norm2(p));
    x.u = u;
    return x;
}

double extended_coord(const ExtendedState& x, int i) {
    switch (i) {
        case 0: return x.q0;
        case 1: return x.q.x;
        case 2: return x.q.y;
        case 3: return x.q.z;
        case 4: return x.p0;
        case 5: return x.p.x;
        case 6: return x.p.y;
        case 7: return x.p.z;
    }
    throw std::out_of_range("extended_coord: index must be in [0,8)");
}

void set_extended_coord(ExtendedState& x, int i, double v) {
    switch (i) {
        case 0: x.q0 = v; return;
        case 1: x.q.x = v; return;
        case 2: x.q.y = v; return;
        case 3: x.q.z = v; return;
        case 4: x.p0 = v; return;
        case 5: x.p.x = v; return;
        case 6: x.p.y = v; return;
        case 7: x.p.z = v; return;
    }
    throw std::out_of_range("set_extended_coord: index must be in [0,8)");
}

double default_fd_step(const ExtendedState& x) {
    double m = 1.0;
    for (int i = 0; i < 8; ++i) m = std::max(m, std::abs(extended_coord(x, i)));
    return 1e-5 * m;
}

namespace {

double eval_checked(const Observable& f, const ExtendedState& x) {
    const double v = f(x);
    if (!std::isfinite(v))
        throw std::domain_error("poisson_bracket_numeric: observable returned non-finite value " +
                                std::to_string(v));
    return v;
}

// d f / d z_i by central difference.
double partial(const Observable& f, const ExtendedState& x, int i, double h) {
    ExtendedState xp = x, xm = x;
    set_extended_coord(xp, i, extended_coord(x, i) + h);
    set_extended_coord(xm, i, extended_coord(x, i) - h);
    return (eval_checked(f, xp) - eval_checked(f, xm)) / (2.0 * h);
}

}  // namespace

double poisson_bracket_numeric(const Observable& f, const Observable& g,
                               const ExtendedState& x, double h) {
    if (h <= 0.0) h = default_fd_step(x);
    double sum = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        const int iq = mu, ip = 4 + mu;
        sum += partial(f, x, iq, h) * partial(g, x, ip, h);
        sum -= partial(f, x, ip, h) * partial(g, x, iq, h);
    }
    return sum;
}

double mass_shell_residual(const ExtendedState& x, double m0, double c) {
    return x.p0 * x.p0 - norm2(x.p) - m0 * m0 * c * c;
}

}  // namespace relwave
