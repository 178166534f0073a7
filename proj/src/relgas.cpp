#include "relwave/relgas.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "relwave/numerics.hpp"

namespace relwave {

namespace {
constexpr double kPi = std::numbers::pi;
// relative tail cutoff exp(-120) ~ 8e-53, far below the quadrature tolerance
constexpr double kTailDecades = 120.0;
}

GasParams::GasParams(double mu_, double temp_, double m0_, double c_, double volume_, double h_)
    : mu(mu_), temp(temp_), m0(m0_), c(c_), volume(volume_), h(h_) {
    if (!(temp > 0.0)) throw std::invalid_argument("GasParams: T must be > 0");
    if (!(volume > 0.0)) throw std::invalid_argument("GasParams: V must be > 0");
    if (!(m0 > 0.0)) throw std::invalid_argument("GasParams: m0 must be > 0");
    if (!(c > 0.0)) throw std::invalid_argument("GasParams: c must be > 0");
    if (!(h > 0.0)) throw std::invalid_argument("GasParams: h must be > 0");
}

double particle_energy(double p_abs, double m0, double c) {
    return std::sqrt(p_abs * p_abs * c * c + m0 * m0 * c * c * c * c);
}

double equilibrium_f(const GasParams& g, const Vec3& p) {
    const double eps = particle_energy(norm(p), g.m0, g.c);
    return (2.0 / (g.h * g.h * g.h)) * std::exp((g.mu - eps) / g.temp);
}

ThermoIntegrals thermo_integrals(const GasParams& g, double eps_max) {
    const double rest = g.m0 * g.c * g.c;
    if (!(eps_max >= rest))
        throw std::domain_error("thermo_integrals: eps_max below the rest energy");

    ThermoIntegrals out;
    if (eps_max == rest) return out;  // empty energy range

    const bool infinite = std::isinf(eps_max);
    const double eps_top = infinite ? rest + kTailDecades * g.temp : eps_max;
    const double p_max = std::sqrt(eps_top * eps_top - rest * rest) / g.c;

    // common prefactor with the rest energy factored out of the exponent to
    // keep integrands O(1) for any T
    const double pref = 8.0 * kPi * g.volume / (g.h * g.h * g.h) *
                        std::exp((g.mu - rest) / g.temp);

    auto boltz = [&](double eps) { return std::exp(-(eps - rest) / g.temp); };

    // momentum-space route
    const double n_int = integrate_adaptive(
        [&](double p) { return p * p * boltz(particle_energy(p, g.m0, g.c)); }, 0.0, p_max);
    const double e_int = integrate_adaptive(
        [&](double p) {
            const double eps = particle_energy(p, g.m0, g.c);
            return p * p * eps * boltz(eps);
        },
        0.0, p_max);
    out.n_particles = pref * n_int;
    out.energy = pref * e_int;

    // energy-space route through g_T with eps = rest*cosh(w); the square-root
    // edge becomes a smooth sinh^2 factor
    const double w_max = std::acosh(eps_top / rest);
    const double gt_int = integrate_adaptive(
        [&](double w) {
            const double ch = std::cosh(w), sh = std::sinh(w);
            return ch * ch * sh * sh * boltz(rest * ch);
        },
        0.0, w_max);
    // rest^4 / c^3 = m0^4 c^5
    out.energy_gt_route = pref * std::pow(rest, 4) / (g.c * g.c * g.c) * gt_int;

    const double scale = std::max(std::abs(out.energy), 1e-300);
    if (std::abs(out.energy - out.energy_gt_route) > 1e-5 * scale)
        throw std::runtime_error("thermo_integrals: energy cross-check failed, routes " +
                                 std::to_string(out.energy) + " vs " +
                                 std::to_string(out.energy_gt_route));
    return out;
}

double gt_integrand(double eps, double temp, double m0, double c) {
    const double rest = m0 * c * c;
    if (eps <= rest) return 0.0;
    return eps * eps * std::sqrt(eps * eps - rest * rest) * std::exp(-eps / temp);
}

double gt_argmax(double temp, double m0, double c) {
    if (!(temp > 0.0)) throw std::invalid_argument("gt_argmax: T must be > 0");
    const double rest = m0 * c * c;
    return golden_section_max(
        [&](double eps) { return gt_integrand(eps, temp, m0, c); }, rest * (1.0 + 1e-12),
        20.0 * rest, 1e-8 * rest);
}

namespace {

// Bernoulli weight x/(exp(x)-1) of the exponentially fitted face flux.
double bernoulli(double x) {
    if (std::abs(x) < 1e-5) return 1.0 - 0.5 * x + x * x / 12.0;
    return x / std::expm1(x);
}

}  // namespace

FokkerPlanckReport fokker_planck_residual(const GasParams& g, const MomentumGrid3& grid,
                                          double gamma, std::span<const double> f_in) {
    if (grid.n < 4) throw std::invalid_argument("fokker_planck_residual: grid too small");
    const std::size_t total = grid.size();
    std::vector<double> f;
    if (f_in.empty()) {
        f.resize(total);
        for (int i = 0; i < grid.n; ++i)
            for (int j = 0; j < grid.n; ++j)
                for (int k = 0; k < grid.n; ++k)
                    f[grid.idx(i, j, k)] =
                        equilibrium_f(g, {grid.p_at(i), grid.p_at(j), grid.p_at(k)});
    } else {
        if (f_in.size() != total)
            throw std::invalid_argument("fokker_planck_residual: field size mismatch");
        f.assign(f_in.begin(), f_in.end());
    }

    std::vector<double> eps(total);
    for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j)
            for (int k = 0; k < grid.n; ++k)
                eps[grid.idx(i, j, k)] = particle_energy(
                    norm(Vec3{grid.p_at(i), grid.p_at(j), grid.p_at(k)}), g.m0, g.c);

    FokkerPlanckReport rep;
    rep.residual.assign(total, 0.0);
    const int n = grid.n;
    const double dp = grid.dp, temp = g.temp;

    // face flux between lo and hi along one axis:
    //   G = (T/dp) (B(-d) f_hi - B(d) f_lo),  d = (eps_hi - eps_lo)/T,
    // the exponentially fitted form of (grad eps) f + T grad f
    auto face = [&](std::size_t lo, std::size_t hi) {
        const double d = (eps[hi] - eps[lo]) / temp;
        return temp / dp * (bernoulli(-d) * f[hi] - bernoulli(d) * f[lo]);
    };

    const int strides[3] = {n * n, n, 1};
    for (int i = 1; i < n - 1; ++i) {
        for (int j = 1; j < n - 1; ++j) {
            for (int k = 1; k < n - 1; ++k) {
                const std::size_t c0 = grid.idx(i, j, k);
                double div = 0.0;
                for (int a = 0; a < 3; ++a) {
                    const std::size_t s = strides[a];
                    div += (face(c0, c0 + s) - face(c0 - s, c0)) / dp;
                }
                rep.residual[c0] = gamma * div;
                rep.interior_max = std::max(rep.interior_max, std::abs(rep.residual[c0]));
            }
        }
    }

    // drift-term scale by plain central differences of div_p((p c^2/eps) f)
    const double c2 = g.c * g.c;
    for (int i = 1; i < n - 1; ++i) {
        for (int j = 1; j < n - 1; ++j) {
            for (int k = 1; k < n - 1; ++k) {
                const std::size_t c0 = grid.idx(i, j, k);
                const double pc[3] = {grid.p_at(i), grid.p_at(j), grid.p_at(k)};
                double div = 0.0;
                for (int a = 0; a < 3; ++a) {
                    const std::size_t s = strides[a];
                    const double mu_hi = (pc[a] + dp) * c2 / eps[c0 + s];
                    const double mu_lo = (pc[a] - dp) * c2 / eps[c0 - s];
                    div += (mu_hi * f[c0 + s] - mu_lo * f[c0 - s]) / (2.0 * dp);
                }
                rep.term_scale = std::max(rep.term_scale, std::abs(gamma * div));
            }
        }
    }
    return rep;
}

double velocity_cutoff_fraction(double eps_max, double m0, double c) {
    const double rest = m0 * c * c;
    if (!(eps_max >= rest))
        throw std::domain_error("velocity_cutoff_fraction: eps_max below the rest energy");
    if (std::isinf(eps_max)) return 1.0;
    const double r = rest / eps_max;
    return std::sqrt(1.0 - r * r);
}

std::vector<std::complex<double>> finite_fourier(std::span<const double> samples,
                                                 double half_width, int n_max) {
    if (n_max < 0) throw std::invalid_argument("finite_fourier: n_max must be >= 0");
    if (samples.size() < 2) throw std::invalid_argument("finite_fourier: need samples");
    if (!(half_width > 0.0)) throw std::invalid_argument("finite_fourier: half_width must be > 0");
    const int m = static_cast<int>(samples.size());
    const double dx = 2.0 * half_width / m;
    std::vector<std::complex<double>> coeffs(2 * n_max + 1);
    for (int n = -n_max; n <= n_max; ++n) {
        std::complex<double> acc{0.0, 0.0};
        for (int j = 0; j < m; ++j) {
            const double x = -half_width + j * dx;
            acc += samples[j] * std::polar(1.0, n * kPi * x / half_width);
        }
        coeffs[n + n_max] = acc * dx;
    }
    return coeffs;
}

double finite_fourier_reconstruct(std::span<const std::complex<double>> coeffs,
                                  double half_width, double x) {
    const int n_max = (static_cast<int>(coeffs.size()) - 1) / 2;
    std::complex<double> acc{0.0, 0.0};
    for (int n = -n_max; n <= n_max; ++n)
        acc += coeffs[n + n_max] * std::polar(1.0, -n * kPi * x / half_width);
    return acc.real() / (2.0 * half_width);
}

double sound_velocity(double temp, double m0) { return std::sqrt(temp / m0); }

}  // namespace relwave
