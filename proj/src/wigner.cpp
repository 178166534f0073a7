#include "relwave/wigner.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "relwave/csv.hpp"

namespace relwave {

namespace {
constexpr double kPi = std::numbers::pi;
}

GlauberPacket::GlauberPacket(double q0c, double p0m, double omega_, double sigma_, double c_)
    : q0_centroid(q0c), p0_mean(p0m), omega(omega_), sigma(sigma_), c(c_) {
    if (!(omega > 0.0)) throw std::invalid_argument("GlauberPacket: Omega must be > 0");
    if (!(sigma > 0.0)) throw std::invalid_argument("GlauberPacket: sigma must be > 0");
    if (!(c > 0.0)) throw std::invalid_argument("GlauberPacket: c must be > 0");
}

cdouble glauber_eval(const GlauberPacket& g, double q0) {
    const double dq = q0 - g.q0_centroid;
    const double amp = std::sqrt(g.omega / (g.c * std::sqrt(kPi))) *
                       std::exp(-g.omega * g.omega * dq * dq / (2.0 * g.c * g.c));
    const double phase = g.p0_mean * (q0 - 0.5 * g.q0_centroid) / g.sigma;
    return std::polar(amp, phase);
}

WavePacket make_gaussian_wavepacket(const GlauberPacket& chi, const SpatialGrid& grid,
                                    double x0, double width, double p_mean, double m0) {
    if (grid.n < 8 || !(grid.dx > 0.0))
        throw std::invalid_argument("make_gaussian_wavepacket: bad grid");
    if (!(width > 0.0)) throw std::invalid_argument("make_gaussian_wavepacket: width must be > 0");
    WavePacket wp;
    wp.chi = chi;
    wp.grid = grid;
    wp.sigma = chi.sigma;
    wp.m0 = m0;
    wp.c = chi.c;
    wp.psi.resize(grid.n);
    double nrm = 0.0;
    for (int j = 0; j < grid.n; ++j) {
        const double x = grid.x_at(j);
        const double amp = std::exp(-(x - x0) * (x - x0) / (4.0 * width * width));
        wp.psi[j] = std::polar(amp, p_mean * x / wp.sigma);
        nrm += amp * amp;
    }
    nrm = std::sqrt(nrm * grid.dx);
    for (auto& v : wp.psi) v /= nrm;
    return wp;
}

namespace {

cdouble interp_psi(const SpatialGrid& g, const std::vector<cdouble>& psi, double x) {
    const double pos = (x - g.x_min) / g.dx;
    if (pos < -1e-9 || pos > g.n - 1 + 1e-9)
        throw std::domain_error("quantum_distribution_eval: point outside the spatial grid");
    if (pos <= 0.0) return psi.front();
    if (pos >= g.n - 1) return psi.back();
    const int j = static_cast<int>(pos);
    const double t = pos - j;
    return (1.0 - t) * psi[j] + t * psi[j + 1];
}

}  // namespace

cdouble quantum_distribution_eval(const WavePacket& wp, double q0, double q1, double k0,
                                  double k1) {
    const cdouble chi_p = glauber_eval(wp.chi, q0 + 0.5 * wp.sigma * k0);
    const cdouble chi_m = glauber_eval(wp.chi, q0 - 0.5 * wp.sigma * k0);
    const cdouble psi_p = interp_psi(wp.grid, wp.psi, q1 + 0.5 * wp.sigma * k1);
    const cdouble psi_m = interp_psi(wp.grid, wp.psi, q1 - 0.5 * wp.sigma * k1);
    return chi_p * std::conj(chi_m) * psi_p * std::conj(psi_m);
}

cdouble quantum_distribution_eval(const std::function<cdouble(double, double)>& psi,
                                  double sigma, double q0, double q1, double k0, double k1) {
    return psi(q0 + 0.5 * sigma * k0, q1 + 0.5 * sigma * k1) *
           std::conj(psi(q0 - 0.5 * sigma * k0, q1 - 0.5 * sigma * k1));
}

WignerField wigner_transform_spatial(const WavePacket& wp) {
    const int n = wp.grid.n;
    if (!is_power_of_two(static_cast<std::size_t>(n)))
        throw std::invalid_argument("wigner_transform_spatial: grid size must be a power of two");
    WignerField w;
    w.qgrid = wp.grid;
    w.np = n;
    w.dp = kPi * wp.sigma / (n * wp.grid.dx);
    w.p_min = -0.5 * n * w.dp;
    w.f.assign(static_cast<std::size_t>(n) * n, 0.0);

    const double coeff = wp.grid.dx / (kPi * wp.sigma);
    std::vector<cdouble> corr(n);
    for (int j = 0; j < n; ++j) {
        // correlation at half-shifts: psi(j+r) psi*(j-r), r in [-n/2, n/2)
        for (int r = -n / 2; r < n / 2; ++r) {
            const int jp = j + r, jm = j - r;
            const int t = (r + n) % n;
            corr[t] = (jp >= 0 && jp < n && jm >= 0 && jm < n)
                          ? wp.psi[jp] * std::conj(wp.psi[jm])
                          : cdouble{0.0, 0.0};
        }
        fft_inplace(corr, false);
        for (int mc = 0; mc < n; ++mc) {
            const int m = (mc - n / 2 + n) % n;  // centered output index
            const cdouble val = coeff * corr[m];
            w.f[w.idx(j, mc)] = val.real();
            w.max_imag_residue = std::max(w.max_imag_residue, std::abs(val.imag()));
        }
    }
    return w;
}

double glauber_wigner_factor(const GlauberPacket& g, double q0, double p0) {
    const double dq = q0 - g.q0_centroid;
    const double dp = p0 - g.p0_mean;
    const double w2 = g.omega * g.omega;
    const double c2 = g.c * g.c;
    return std::exp(-w2 * dq * dq / c2 - c2 * dp * dp / (w2 * g.sigma * g.sigma)) /
           (kPi * g.sigma);
}

double ExtendedWignerField::eval(double q0, double p0, double q1, double p1) const {
    const double pos_q = (q1 - spatial.qgrid.x_min) / spatial.qgrid.dx;
    const double pos_p = (p1 - spatial.p_min) / spatial.dp;
    if (pos_q < 0 || pos_q > spatial.qgrid.n - 1 || pos_p < 0 || pos_p > spatial.np - 1)
        throw std::domain_error("ExtendedWignerField::eval: point outside the field grid");
    const int j = std::min(static_cast<int>(pos_q), spatial.qgrid.n - 2);
    const int m = std::min(static_cast<int>(pos_p), spatial.np - 2);
    const double tq = pos_q - j, tp = pos_p - m;
    const double f00 = spatial.f[spatial.idx(j, m)], f01 = spatial.f[spatial.idx(j, m + 1)];
    const double f10 = spatial.f[spatial.idx(j + 1, m)],
                 f11 = spatial.f[spatial.idx(j + 1, m + 1)];
    const double fq = (1 - tq) * ((1 - tp) * f00 + tp * f01) +
                      tq * ((1 - tp) * f10 + tp * f11);
    return glauber_wigner_factor(chi, q0, p0) * fq;
}

ExtendedWignerField wigner_transform(const WavePacket& wp) {
    return {wp.chi, wigner_transform_spatial(wp)};
}

std::vector<double> wigner_q_marginal(const WignerField& w) {
    std::vector<double> out(w.qgrid.n, 0.0);
    for (int j = 0; j < w.qgrid.n; ++j) {
        double s = 0;
        for (int m = 0; m < w.np; ++m) s += w.f[w.idx(j, m)];
        out[j] = s * w.dp;
    }
    return out;
}

std::vector<double> wigner_p_marginal(const WignerField& w) {
    std::vector<double> out(w.np, 0.0);
    for (int m = 0; m < w.np; ++m) {
        double s = 0;
        for (int j = 0; j < w.qgrid.n; ++j) s += w.f[w.idx(j, m)];
        out[m] = s * w.qgrid.dx;
    }
    return out;
}

void write_wigner_csv(const std::filesystem::path& path, const WignerField& w) {
    CsvTable t;
    t.header = {"q", "p", "f"};
    t.rows.reserve(w.f.size());
    for (int j = 0; j < w.qgrid.n; ++j)
        for (int m = 0; m < w.np; ++m)
            t.rows.push_back({w.qgrid.x_at(j), w.p_at(m), w.f[w.idx(j, m)]});
    write_csv(path, t);
}

namespace {

void require_compatible(const WavePacket& a, const WavePacket& b) {
    if (a.grid.n != b.grid.n || a.grid.x_min != b.grid.x_min || a.grid.dx != b.grid.dx)
        throw std::domain_error("phase_space_overlap: spatial grids differ");
    if (std::abs(a.sigma - b.sigma) > 1e-12 * a.sigma)
        throw std::domain_error("phase_space_overlap: sigma values differ");
}

// Quadrature window covering both time packets.
void chi_window(const GlauberPacket& a, const GlauberPacket& b, double& lo, double& hi) {
    const double wa = a.c / a.omega, wb = b.c / b.omega;
    lo = std::min(a.q0_centroid - 10.0 * wa, b.q0_centroid - 10.0 * wb);
    hi = std::max(a.q0_centroid + 10.0 * wa, b.q0_centroid + 10.0 * wb);
}

cdouble chi_inner_product(const GlauberPacket& a, const GlauberPacket& b) {
    double lo, hi;
    chi_window(a, b, lo, hi);
    const int n = 8192;
    const double h = (hi - lo) / n;
    cdouble acc{0.0, 0.0};
    for (int i = 0; i <= n; ++i) {
        const double q0 = lo + i * h;
        const double wgt = (i == 0 || i == n) ? 0.5 : 1.0;
        acc += wgt * std::conj(glauber_eval(a, q0)) * glauber_eval(b, q0);
    }
    return acc * h;
}

}  // namespace

double phase_space_overlap(const WavePacket& wp1, const WavePacket& wp2) {
    require_compatible(wp1, wp2);
    const cdouble chi_ip = chi_inner_product(wp1.chi, wp2.chi);
    cdouble psi_ip{0.0, 0.0};
    for (int j = 0; j < wp1.grid.n; ++j) psi_ip += std::conj(wp1.psi[j]) * wp2.psi[j];
    psi_ip *= wp1.grid.dx;
    const double amp2 = std::norm(chi_ip * psi_ip);
    const double denom = 2.0 * kPi * wp1.sigma;
    return amp2 / (denom * denom);
}

double phase_space_overlap_quadrature(const WavePacket& wp1, const WavePacket& wp2) {
    require_compatible(wp1, wp2);
    // time-energy factor on a (q0, p0) quadrature grid
    double q_lo, q_hi;
    chi_window(wp1.chi, wp2.chi, q_lo, q_hi);
    const double sp1 = wp1.chi.sigma * wp1.chi.omega / wp1.chi.c;
    const double sp2 = wp2.chi.sigma * wp2.chi.omega / wp2.chi.c;
    const double p_lo = std::min(wp1.chi.p0_mean - 10.0 * sp1, wp2.chi.p0_mean - 10.0 * sp2);
    const double p_hi = std::max(wp1.chi.p0_mean + 10.0 * sp1, wp2.chi.p0_mean + 10.0 * sp2);
    const int nq = 600, np = 600;
    const double hq = (q_hi - q_lo) / nq, hp = (p_hi - p_lo) / np;
    double chi_term = 0.0;
    for (int i = 0; i <= nq; ++i) {
        const double q0 = q_lo + i * hq;
        const double wq = (i == 0 || i == nq) ? 0.5 : 1.0;
        double row = 0.0;
        for (int m = 0; m <= np; ++m) {
            const double p0 = p_lo + m * hp;
            const double wp = (m == 0 || m == np) ? 0.5 : 1.0;
            row += wp * glauber_wigner_factor(wp1.chi, q0, p0) *
                   glauber_wigner_factor(wp2.chi, q0, p0);
        }
        chi_term += wq * row;
    }
    chi_term *= hq * hp;

    const WignerField f1 = wigner_transform_spatial(wp1);
    const WignerField f2 = wigner_transform_spatial(wp2);
    double psi_term = 0.0;
    for (std::size_t k = 0; k < f1.f.size(); ++k) psi_term += f1.f[k] * f2.f[k];
    psi_term *= f1.qgrid.dx * f1.dp;
    return chi_term * psi_term;
}

UncertaintyReport uncertainty_products(const GlauberPacket& chi) {
    const double sq = chi.c / (chi.omega * std::numbers::sqrt2);  // positional spread of q0
    const int n = 4096;
    const double lo = chi.q0_centroid - 12.0 * sq * std::numbers::sqrt2;
    const double hi = chi.q0_centroid + 12.0 * sq * std::numbers::sqrt2;
    const double h = (hi - lo) / n;

    // position moments of |chi|^2
    double m0 = 0, m1 = 0, m2 = 0;
    std::vector<cdouble> samples(n);
    for (int i = 0; i < n; ++i) {
        const double q0 = lo + i * h;
        const cdouble v = glauber_eval(chi, q0);
        samples[i] = v;
        const double d = std::norm(v);
        m0 += d;
        m1 += d * q0;
        m2 += d * q0 * q0;
    }
    const double mean_q0 = m1 / m0;
    const double var_q0 = m2 / m0 - mean_q0 * mean_q0;

    // energy moments from the Fourier representation
    fft_inplace(samples, false);
    double s0 = 0, s1 = 0, s2 = 0;
    for (int m = 0; m < n; ++m) {
        const int mw = m < n / 2 ? m : m - n;
        const double p0 = chi.sigma * 2.0 * kPi * mw / (n * h);
        const double d = std::norm(samples[m]);
        s0 += d;
        s1 += d * p0;
        s2 += d * p0 * p0;
    }
    const double mean_p0 = s1 / s0;
    const double var_p0 = s2 / s0 - mean_p0 * mean_p0;

    UncertaintyReport r;
    r.delta_t = std::sqrt(var_q0) / chi.c;
    r.delta_e = chi.c * std::sqrt(var_p0);
    r.product = r.delta_t * r.delta_e;
    return r;
}

UncertaintyReport uncertainty_products(const WavePacket& wp) {
    return uncertainty_products(wp.chi);
}

double kg_residual_plane_wave(double p0, double p1, double m0, double c) {
    return p0 * p0 - p1 * p1 - m0 * m0 * c * c;
}

std::vector<cdouble> kg_residual_field(const ComplexField2D& psi, double m0, double c,
                                       double sigma) {
    if (psi.n0 < 3 || psi.n1 < 3)
        throw std::invalid_argument("kg_residual_field: need at least 3 nodes per axis");
    std::vector<cdouble> r(psi.size(), cdouble{0.0, 0.0});
    const double inv_d0 = 1.0 / (psi.d0 * psi.d0), inv_d1 = 1.0 / (psi.d1 * psi.d1);
    const double ms = m0 * m0 * c * c, s2 = sigma * sigma;
    for (int i = 1; i < psi.n0 - 1; ++i) {
        for (int j = 1; j < psi.n1 - 1; ++j) {
            const cdouble d00 = (psi.v[psi.idx(i + 1, j)] - 2.0 * psi.v[psi.idx(i, j)] +
                                 psi.v[psi.idx(i - 1, j)]) * inv_d0;
            const cdouble d11 = (psi.v[psi.idx(i, j + 1)] - 2.0 * psi.v[psi.idx(i, j)] +
                                 psi.v[psi.idx(i, j - 1)]) * inv_d1;
            r[psi.idx(i, j)] = -s2 * (d00 - d11) - ms * psi.v[psi.idx(i, j)];
        }
    }
    return r;
}

cdouble kg_fit_box_eigenvalue(const ComplexField2D& psi) {
    if (psi.n0 < 3 || psi.n1 < 3)
        throw std::invalid_argument("kg_fit_box_eigenvalue: need at least 3 nodes per axis");
    const double inv_d0 = 1.0 / (psi.d0 * psi.d0), inv_d1 = 1.0 / (psi.d1 * psi.d1);
    cdouble num{0.0, 0.0};
    double den = 0.0;
    for (int i = 1; i < psi.n0 - 1; ++i) {
        for (int j = 1; j < psi.n1 - 1; ++j) {
            const cdouble box = (psi.v[psi.idx(i + 1, j)] - 2.0 * psi.v[psi.idx(i, j)] +
                                 psi.v[psi.idx(i - 1, j)]) * inv_d0 -
                                (psi.v[psi.idx(i, j + 1)] - 2.0 * psi.v[psi.idx(i, j)] +
                                 psi.v[psi.idx(i, j - 1)]) * inv_d1;
            num += std::conj(psi.v[psi.idx(i, j)]) * box;
            den += std::norm(psi.v[psi.idx(i, j)]);
        }
    }
    if (den == 0.0) throw std::domain_error("kg_fit_box_eigenvalue: zero field");
    return num / den;
}

double effective_mass(double m0, double delta_p0, double c) {
    const double gap = m0 * m0 - delta_p0 * delta_p0 / (c * c);
    if (gap <= 0.0)
        throw std::domain_error("effective_mass: energy width delta_p0 >= m0 c");
    return std::sqrt(gap);
}

std::vector<std::vector<cdouble>> evolve_nonrel(const std::vector<cdouble>& psi0,
                                                const SpatialGrid& grid, double m_x,
                                                double mean_p2, double sigma, double c,
                                                double t_span, int n_steps) {
    if (!(m_x > 0.0)) throw std::domain_error("evolve_nonrel: effective mass must be > 0");
    if (psi0.size() != static_cast<std::size_t>(grid.n) ||
        !is_power_of_two(psi0.size()))
        throw std::invalid_argument("evolve_nonrel: psi0 size must match a power-of-two grid");
    if (n_steps < 1) throw std::invalid_argument("evolve_nonrel: n_steps must be >= 1");

    const double corr = 1.0 - mean_p2 / (2.0 * m_x * m_x * c * c);
    std::vector<cdouble> spec(psi0);
    fft_inplace(spec, false);

    std::vector<std::vector<cdouble>> out;
    out.reserve(static_cast<std::size_t>(n_steps) + 1);
    out.push_back(psi0);
    const int n = grid.n;
    std::vector<cdouble> work(n);
    for (int step = 1; step <= n_steps; ++step) {
        const double t = t_span * step / n_steps;
        for (int m = 0; m < n; ++m) {
            const int mw = m < n / 2 ? m : m - n;
            const double k = 2.0 * kPi * mw / (n * grid.dx);
            const double phase = -t * (sigma * k * k / (2.0 * m_x)) * corr;
            work[m] = spec[m] * std::polar(1.0, phase);
        }
        fft_inplace(work, true);
        out.push_back(work);
    }
    return out;
}

HydrogenCorrections hydrogen_corrections(double mean_p2, double mean_p4, double alpha) {
    const double a2 = alpha * alpha;
    return {-a2 * mean_p2 * mean_p2 / 4.0, -a2 * mean_p4 / 8.0, -a2 / 8.0};
}

namespace {

void require_centered(const ComplexField2D& f, const char* who) {
    if (!is_power_of_two(static_cast<std::size_t>(f.n0)) ||
        !is_power_of_two(static_cast<std::size_t>(f.n1)))
        throw std::invalid_argument(std::string(who) + ": sizes must be powers of two");
    if (std::abs(f.x0_min + 0.5 * f.n0 * f.d0) > 1e-9 * f.d0 ||
        std::abs(f.x1_min + 0.5 * f.n1 * f.d1) > 1e-9 * f.d1)
        throw std::invalid_argument(std::string(who) + ": lattice must be centered");
}

// Separable centered transform along both axes; coeff per axis applied.
ComplexField2D transform_2d(const ComplexField2D& in, int sign, double coeff0,
                            double coeff1) {
    ComplexField2D out;
    out.n0 = in.n0;
    out.n1 = in.n1;
    out.d0 = 2.0 * kPi / (in.n0 * in.d0);
    out.d1 = 2.0 * kPi / (in.n1 * in.d1);
    out.x0_min = -0.5 * out.n0 * out.d0;
    out.x1_min = -0.5 * out.n1 * out.d1;
    out.v.resize(in.size());

    // axis 1 (rows), then axis 0 (columns)
    std::vector<cdouble> tmp(in.size());
    for (int i = 0; i < in.n0; ++i) {
        std::vector<cdouble> row(in.v.begin() + i * in.n1, in.v.begin() + (i + 1) * in.n1);
        const auto t = centered_transform(row, in.d1, sign, coeff1);
        for (int j = 0; j < in.n1; ++j) tmp[in.idx(i, j)] = t[j];
    }
    for (int j = 0; j < in.n1; ++j) {
        std::vector<cdouble> col(in.n0);
        for (int i = 0; i < in.n0; ++i) col[i] = tmp[in.idx(i, j)];
        const auto t = centered_transform(col, in.d0, sign, coeff0);
        for (int i = 0; i < in.n0; ++i) out.v[out.idx(i, j)] = t[i];
    }
    return out;
}

}  // namespace

ComplexField2D k_to_momentum(const ComplexField2D& ftilde) {
    require_centered(ftilde, "k_to_momentum");
    return transform_2d(ftilde, -1, ftilde.d0 / (2.0 * kPi), ftilde.d1 / (2.0 * kPi));
}

ComplexField2D momentum_to_k(const ComplexField2D& f_momentum) {
    require_centered(f_momentum, "momentum_to_k");
    return transform_2d(f_momentum, +1, f_momentum.d0, f_momentum.d1);
}

SqrtOperatorResult apply_sqrt_operator(const ComplexField2D& ftilde, double /*m0*/, double c) {
    // the multiplier -c sqrt(p0^2 - p1^2) and the light-cone mask do not
    // depend on the mass; m0 only sets the shell the caller targets
    ComplexField2D f = k_to_momentum(ftilde);
    double total = 0.0, masked = 0.0;
    for (int i = 0; i < f.n0; ++i) {
        const double p0 = f.x0_at(i);
        for (int j = 0; j < f.n1; ++j) {
            const double p1 = f.x1_at(j);
            const std::size_t k = f.idx(i, j);
            const double mass = std::abs(f.v[k]);
            total += mass;
            const double gap = p0 * p0 - p1 * p1;
            if (gap > 0.0) {
                f.v[k] *= -c * std::sqrt(gap);
            } else {
                masked += mass;
                f.v[k] = 0.0;
            }
        }
    }
    SqrtOperatorResult res;
    res.field = momentum_to_k(f);
    res.spacelike_leakage = total > 0.0 ? masked / total : 0.0;
    return res;
}

}  // namespace relwave
