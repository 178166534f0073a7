#include "relwave/symmetry.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace relwave {

GalileiElement::GalileiElement(const Mat3& xi_, const Vec3& d_, const Vec3& v_, double tau_)
    : xi(xi_), d(d_), v(v_), tau(tau_) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (std::abs(xi.a[i][j] + xi.a[j][i]) > 1e-14)
                throw std::invalid_argument("GalileiElement: xi must be antisymmetric");
}

GalileiElement GalileiElement::translation(const Vec3& d) {
    return GalileiElement(Mat3::zero(), d, {}, 0.0);
}
GalileiElement GalileiElement::boost_velocity(const Vec3& v) {
    return GalileiElement(Mat3::zero(), {}, v, 0.0);
}
GalileiElement GalileiElement::rotation(const Vec3& axis_angle) {
    return GalileiElement(Mat3::antisymmetric(axis_angle), {}, {}, 0.0);
}
GalileiElement GalileiElement::time_shift(double tau) {
    return GalileiElement(Mat3::zero(), {}, {}, tau);
}

std::pair<Vec3, double> galilei_act(const GalileiElement& g, const Vec3& q, double t) {
    return {q + g.xi.apply(q) - g.d - t * g.v, t - g.tau};
}

std::pair<Vec3, double> lorentz_act_infinitesimal(const GalileiElement& g, const Vec3& q,
                                                  double t, double c) {
    return {q + g.xi.apply(q) - g.d - t * g.v, t - dot(g.v, q) / (c * c) - g.tau};
}

ExtendedLinearMap lift_to_extended(const GalileiElement& g, double m, double c,
                                   LiftMode mode, EnergyBranch branch) {
    ExtendedLinearMap map;
    map.branch = branch;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) map.a[i][j] = g.xi.a[i][j];
        map.a[3][i] = g.v[i] / c;  // bottom row v/c
        map.b_q[i] = g.d[i];
    }
    map.b_q[3] = c * g.tau;
    if (mode == LiftMode::GalileiLift) {
        for (int i = 0; i < 3; ++i) map.b_p[i] = m * g.v[i];
    } else {
        // velocity moved into the matrix: +v/c column on the positive-energy
        // branch, -v/c on the SO(4) branch
        const double s = branch == EnergyBranch::Lorentz ? 1.0 : -1.0;
        for (int i = 0; i < 3; ++i) map.a[i][3] = s * g.v[i] / c;
    }
    return map;
}

ExtendedState apply_infinitesimal(const ExtendedLinearMap& map, const ExtendedState& x) {
    const double qt[4] = {x.q.x, x.q.y, x.q.z, x.q0};
    const double pt[4] = {x.p.x, x.p.y, x.p.z, x.p0};
    double qn[4], pn[4];
    for (int i = 0; i < 4; ++i) {
        double aq = 0, ap = 0;
        for (int j = 0; j < 4; ++j) {
            aq += map.a[j][i] * qt[j];  // A^T q
            ap += map.a[i][j] * pt[j];
        }
        qn[i] = qt[i] - map.b_q[i] - aq;
        pn[i] = pt[i] - map.b_p[i] + ap;
    }
    ExtendedState y = x;
    y.q = {qn[0], qn[1], qn[2]};
    y.q0 = qn[3];
    y.p = {pn[0], pn[1], pn[2]};
    y.p0 = pn[3];
    return y;
}

ExtendedState boost_finite(const ExtendedState& x, const Vec3& v, double c,
                           EnergyBranch branch) {
    const double speed = norm(v);
    if (speed == 0.0) return x;
    const Vec3 n = v / speed;
    const double q_par = dot(x.q, n), p_par = dot(x.p, n);
    const Vec3 q_perp = x.q - q_par * n, p_perp = x.p - p_par * n;

    double ch, sh;
    if (branch == EnergyBranch::Lorentz) {
        if (speed >= c)
            throw std::domain_error("boost_finite: |V| >= c on the Lorentz branch");
        const double rho = std::atanh(speed / c);
        ch = std::cosh(rho);
        sh = std::sinh(rho);
    } else {
        const double angle = speed / c;
        ch = std::cos(angle);
        sh = std::sin(angle);
    }

    ExtendedState y = x;
    if (branch == EnergyBranch::Lorentz) {
        const double qp = ch * q_par - sh * x.q0;
        y.q0 = ch * x.q0 - sh * q_par;
        const double pp = ch * p_par + sh * x.p0;
        y.p0 = ch * x.p0 + sh * p_par;
        y.q = q_perp + qp * n;
        y.p = p_perp + pp * n;
    } else {
        // same rotation in the (parallel, time) plane for q and p
        const double qp = ch * q_par - sh * x.q0;
        y.q0 = sh * q_par + ch * x.q0;
        const double pp = ch * p_par - sh * x.p0;
        y.p0 = sh * p_par + ch * x.p0;
        y.q = q_perp + qp * n;
        y.p = p_perp + pp * n;
    }
    return y;
}

ExtendedState rotate_state(const ExtendedState& x, const Vec3& axis_angle) {
    const Mat3 r = rodrigues(axis_angle);
    ExtendedState y = x;
    y.q = r.apply(x.q);
    y.p = r.apply(x.p);
    return y;
}

namespace {

// Symplectic pairing of flat coordinates (q0..q3, p0..p3):
// {z_i, z_j} = J_ij with J = [[0, I], [-I, 0]].
double canonical_bracket(int i, int j) {
    if (i < 4 && j >= 4 && j - 4 == i) return 1.0;
    if (i >= 4 && j < 4 && i - 4 == j) return -1.0;
    return 0.0;
}

}  // namespace

CanonicalReport check_canonical(const StateMap& map, int samples, std::uint64_t seed,
                                double h) {
    if (samples < 1) throw std::invalid_argument("check_canonical: samples must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    CanonicalReport report;
    report.samples = samples;
    for (int s = 0; s < samples; ++s) {
        ExtendedState x;
        x.q = {unif(rng), unif(rng), unif(rng)};
        x.q0 = unif(rng);
        x.p = {unif(rng), unif(rng), unif(rng)};
        x.p0 = -1.5 + 0.25 * unif(rng);

        // Jacobian M_ij = d x'_i / d z_j by central differences.
        double m[8][8];
        for (int j = 0; j < 8; ++j) {
            ExtendedState xp = x, xm = x;
            set_extended_coord(xp, j, extended_coord(x, j) + h);
            set_extended_coord(xm, j, extended_coord(x, j) - h);
            const ExtendedState yp = map(xp), ym = map(xm);
            for (int i = 0; i < 8; ++i)
                m[i][j] = (extended_coord(yp, i) - extended_coord(ym, i)) / (2.0 * h);
        }
        // {x'_i, x'_j} = (M J M^T)_ij
        for (int i = 0; i < 8; ++i) {
            for (int j = 0; j < 8; ++j) {
                double bracket = 0.0;
                for (int mu = 0; mu < 4; ++mu)
                    bracket += m[i][mu] * m[j][4 + mu] - m[i][4 + mu] * m[j][mu];
                const double dev = std::abs(bracket - canonical_bracket(i, j));
                if (dev > report.max_deviation) report.max_deviation = dev;
            }
        }
    }
    return report;
}

CanonicalReport check_canonical(const ExtendedLinearMap& map, int samples,
                                std::uint64_t seed, double h) {
    return check_canonical(
        [&map](const ExtendedState& x) { return apply_infinitesimal(map, x); }, samples,
        seed, h);
}

double intrinsic_frame_boost(double mean_p_parallel, double mean_e, double c) {
    if (!(mean_e > 0.0)) throw std::domain_error("intrinsic_frame_boost: mean_E must be > 0");
    const double ratio = c * mean_p_parallel / mean_e;
    if (std::abs(ratio) >= 1.0)
        throw std::domain_error("intrinsic_frame_boost: superluminal moment pair");
    const double v = c * ratio;  // tanh(rho) = c <p>/<E>
    // verify on the moment pair itself
    ExtendedState moment;
    moment.p = {mean_p_parallel, 0, 0};
    moment.p0 = -mean_e / c;
    const ExtendedState boosted = boost_finite(moment, {v, 0, 0}, c);
    const double scale = std::max(std::abs(mean_p_parallel), mean_e / c);
    if (std::abs(boosted.p.x) > 1e-10 * scale)
        throw std::runtime_error("intrinsic_frame_boost: verification failed");
    return v;
}

}  // namespace relwave
