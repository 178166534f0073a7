#include "relwave/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "relwave/csv.hpp"

namespace relwave {

HamiltonianSpec HamiltonianSpec::free_relativistic(double m0, double c) {
    if (!(m0 > 0.0)) throw std::invalid_argument("HamiltonianSpec: m0 must be > 0");
    if (!(c > 0.0)) throw std::invalid_argument("HamiltonianSpec: c must be > 0");
    HamiltonianSpec s;
    s.kind = HamiltonianKind::FreeRelativistic;
    s.m0 = m0;
    s.c = c;
    return s;
}

HamiltonianSpec HamiltonianSpec::with_potential(double m0, double c, PotentialField v) {
    HamiltonianSpec s = free_relativistic(m0, c);
    s.kind = HamiltonianKind::WithPotential;
    if (!v.value || !v.gradient)
        throw std::invalid_argument("HamiltonianSpec: potential needs value and gradient");
    s.potential = std::move(v);
    return s;
}

HamiltonianSpec HamiltonianSpec::nonrelativistic(double m0, double c, NonrelHamiltonian h) {
    HamiltonianSpec s = free_relativistic(m0, c);
    s.kind = HamiltonianKind::Nonrelativistic;
    if (!h) throw std::invalid_argument("HamiltonianSpec: missing base Hamilton function");
    s.base_nonrel = std::move(h);
    return s;
}

namespace {

// Effective energy coordinate w = p0 + V/c and radicand w^2 - |p|^2.
double radicand(const HamiltonianSpec& spec, const ExtendedState& x, double& w) {
    w = x.p0;
    if (spec.kind == HamiltonianKind::WithPotential) w += spec.potential.value(x.q) / spec.c;
    return w * w - norm2(x.p);
}

[[noreturn]] void spacelike_error(double r) {
    throw std::domain_error("hamiltonian_eval: spacelike argument, radicand " +
                            format_double(r) + " <= 0");
}

// Central-difference partials of the base Hamilton function.
constexpr double kNonrelStep = 1e-6;

double dh_dt(const NonrelHamiltonian& h, const Vec3& q, const Vec3& p, double t) {
    const double s = kNonrelStep * std::max(1.0, std::abs(t));
    return (h(q, p, t + s) - h(q, p, t - s)) / (2.0 * s);
}

Vec3 dh_dq(const NonrelHamiltonian& h, const Vec3& q, const Vec3& p, double t) {
    Vec3 g;
    for (int i = 0; i < 3; ++i) {
        const double s = kNonrelStep * std::max(1.0, std::abs(q[i]));
        Vec3 qp = q, qm = q;
        qp[i] += s;
        qm[i] -= s;
        g[i] = (h(qp, p, t) - h(qm, p, t)) / (2.0 * s);
    }
    return g;
}

Vec3 dh_dp(const NonrelHamiltonian& h, const Vec3& q, const Vec3& p, double t) {
    Vec3 g;
    for (int i = 0; i < 3; ++i) {
        const double s = kNonrelStep * std::max(1.0, std::abs(p[i]));
        Vec3 pp = p, pm = p;
        pp[i] += s;
        pm[i] -= s;
        g[i] = (h(q, pp, t) - h(q, pm, t)) / (2.0 * s);
    }
    return g;
}

}  // namespace

double hamiltonian_eval(const HamiltonianSpec& spec, const ExtendedState& x) {
    if (spec.kind == HamiltonianKind::Nonrelativistic)
        return spec.base_nonrel(x.q, x.p, x.q0 / spec.c) + spec.c * x.p0;
    double w = 0;
    const double r = radicand(spec, x, w);
    if (r <= 0.0) spacelike_error(r);
    return -spec.c * std::sqrt(r);
}

ExtendedDerivative eom_rhs(const HamiltonianSpec& spec, const ExtendedState& x) {
    ExtendedDerivative d;
    if (spec.kind == HamiltonianKind::Nonrelativistic) {
        const double t = x.q0 / spec.c;
        d.dq0 = spec.c;  // d_u t = 1
        d.dq = dh_dp(spec.base_nonrel, x.q, x.p, t);
        d.dp = -1.0 * dh_dq(spec.base_nonrel, x.q, x.p, t);
        // d_u E = dH/dt and p0 = -E/c
        d.dp0 = -dh_dt(spec.base_nonrel, x.q, x.p, t) / spec.c;
        return d;
    }
    double w = 0;
    const double r = radicand(spec, x, w);
    if (r <= 0.0) spacelike_error(r);
    const double root = std::sqrt(r);
    d.dq0 = -spec.c * w / root;
    d.dq = (spec.c / root) * x.p;
    if (spec.kind == HamiltonianKind::WithPotential) {
        // dH/dq = -w grad(V)/root, so d_u p = +w grad(V)/root
        d.dp = (w / root) * spec.potential.gradient(x.q);
    }
    d.dp0 = 0.0;
    return d;
}

namespace {

ExtendedState advance(const ExtendedState& x, const ExtendedDerivative& d, double h) {
    ExtendedState y = x;
    y.q0 += h * d.dq0;
    y.q += h * d.dq;
    y.p0 += h * d.dp0;
    y.p += h * d.dp;
    y.u += h;
    return y;
}

}  // namespace

std::vector<ExtendedState> integrate_trajectory(const HamiltonianSpec& spec,
                                                const ExtendedState& x0, double du,
                                                int n_steps) {
    if (!(du > 0.0)) throw std::invalid_argument("integrate_trajectory: du must be > 0");
    if (n_steps < 1) throw std::invalid_argument("integrate_trajectory: n_steps must be >= 1");
    std::vector<ExtendedState> out;
    out.reserve(static_cast<std::size_t>(n_steps) + 1);
    out.push_back(x0);
    ExtendedState x = x0;
    for (int step = 0; step < n_steps; ++step) {
        try {
            const ExtendedDerivative k1 = eom_rhs(spec, x);
            const ExtendedDerivative k2 = eom_rhs(spec, advance(x, k1, 0.5 * du));
            const ExtendedDerivative k3 = eom_rhs(spec, advance(x, k2, 0.5 * du));
            const ExtendedDerivative k4 = eom_rhs(spec, advance(x, k3, du));
            ExtendedState y = x;
            const double w = du / 6.0;
            y.q0 += w * (k1.dq0 + 2 * k2.dq0 + 2 * k3.dq0 + k4.dq0);
            y.q += w * (k1.dq + 2.0 * k2.dq + 2.0 * k3.dq + k4.dq);
            y.p0 += w * (k1.dp0 + 2 * k2.dp0 + 2 * k3.dp0 + k4.dp0);
            y.p += w * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
            y.u += du;
            x = y;
        } catch (const std::domain_error& e) {
            throw std::domain_error("integrate_trajectory: aborted at step " +
                                    std::to_string(step) + ": " + e.what());
        }
        out.push_back(x);
    }
    return out;
}

Vec3 velocity_from_momentum(const ExtendedState& x, double c) {
    if (x.p0 == 0.0) throw std::domain_error("velocity_from_momentum: p0 = 0");
    return (-c / x.p0) * x.p;
}

InertialParameters inertial_parameters(const ExtendedState& x, double c) {
    // dH/dp0 = -c p0/R and dH/dp_i = c p_i/R, so the p_mu factors cancel
    // exactly, including the p_mu = 0 limits.
    const double r = x.timelike_gap();
    const double root = std::sqrt(r);  // NaN if spacelike; callers own the domain
    return {-root / c, root / c, root / c, root / c};
}

void write_trajectory_csv(const std::filesystem::path& path,
                          std::span<const ExtendedState> trajectory) {
    CsvTable t;
    t.header = {"u", "q0", "q1", "q2", "q3", "p0", "p1", "p2", "p3"};
    t.rows.reserve(trajectory.size());
    for (const auto& x : trajectory)
        t.rows.push_back({x.u, x.q0, x.q.x, x.q.y, x.q.z, x.p0, x.p.x, x.p.y, x.p.z});
    write_csv(path, t);
}

}  // namespace relwave
