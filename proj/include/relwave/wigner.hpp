#pragma once
#include <complex>
#include <filesystem>
#include <functional>
#include <vector>

#include "relwave/fft.hpp"

namespace relwave {

/// Glauber coherent state in the (q0, p0) time-energy plane:
///   chi(q0) = sqrt(Omega/(c sqrt(pi)))
///             * exp(-Omega^2 (q0-Q0)^2 / 2c^2 + i P0 (q0 - Q0/2)/sigma),
/// normalized with <q0> = Q0, var(q0) = c^2/2 Omega^2 and <p0> = P0.
struct GlauberPacket {
    double q0_centroid = 0.0;  // Q0
    double p0_mean = -1.0;     // P0 = -<E>/c
    double omega = 1.0;        // width frequency [1/time]
    double sigma = 1.0;        // phase-space action quantum
    double c = 1.0;

    GlauberPacket() = default;
    GlauberPacket(double q0c, double p0m, double omega_, double sigma_, double c_);
};

cdouble glauber_eval(const GlauberPacket& packet, double q0);

struct SpatialGrid {
    int n = 0;
    double x_min = 0.0;
    double dx = 0.0;
    double x_at(int j) const { return x_min + j * dx; }
};

/// Factorized wave function Psi(q0, q1) = chi(q0) * psi(q1) with psi sampled
/// on a spatial grid; normalized so the total probability is 1.
struct WavePacket {
    GlauberPacket chi;
    SpatialGrid grid;
    std::vector<cdouble> psi;
    double sigma = 1.0;
    double m0 = 1.0;
    double c = 1.0;
};

/// Gaussian psi with position spread `width` (std dev of |psi|^2) and mean
/// momentum p_mean; discretely normalized.
WavePacket make_gaussian_wavepacket(const GlauberPacket& chi, const SpatialGrid& grid,
                                    double x0, double width, double p_mean, double m0);

/// Quantum distribution f~(q, k) = Psi(q + sigma k/2) Psi*(q - sigma k/2),
/// reduced to (q0, q1) with conjugate (k0, k1). Hermitian in k, equals
/// |Psi|^2 at k = 0. Grid evaluations interpolate psi linearly; out-of-grid
/// points raise std::domain_error.
cdouble quantum_distribution_eval(const WavePacket& wp, double q0, double q1, double k0,
                                  double k1);
cdouble quantum_distribution_eval(const std::function<cdouble(double, double)>& psi,
                                  double sigma, double q0, double q1, double k0, double k1);

/// Spatial Wigner field f(q, p) on the grid's q nodes and the conjugate
/// momentum lattice p_m = (m - n/2) * pi*sigma/(n*dx).
struct WignerField {
    SpatialGrid qgrid;
    int np = 0;
    double p_min = 0.0;
    double dp = 0.0;
    std::vector<double> f;  // row-major, q rows x p columns
    double max_imag_residue = 0.0;

    double p_at(int m) const { return p_min + m * dp; }
    std::size_t idx(int j, int m) const { return static_cast<std::size_t>(j) * np + m; }
};

WignerField wigner_transform_spatial(const WavePacket& wp);

/// Exact time-energy Wigner factor of the Glauber packet:
/// (1/pi sigma) exp(-Omega^2 (q0-Q0)^2/c^2 - c^2 (p0-P0)^2 / Omega^2 sigma^2).
double glauber_wigner_factor(const GlauberPacket& packet, double q0, double p0);

/// Extended Wigner function over ((q0, q1), (p0, p1)); the time-energy factor
/// is carried in closed form, the spatial factor numerically.
struct ExtendedWignerField {
    GlauberPacket chi;
    WignerField spatial;
    double eval(double q0, double p0, double q1, double p1) const;
};

ExtendedWignerField wigner_transform(const WavePacket& wp);

std::vector<double> wigner_q_marginal(const WignerField& w);  // sum_p f dp
std::vector<double> wigner_p_marginal(const WignerField& w);  // sum_q f dx

/// CSV columns q,p,f (spatial Wigner field).
void write_wigner_csv(const std::filesystem::path& path, const WignerField& w);

/// Phase-space overlap <f1 f2> through the amplitude identity
/// |<Psi1|Psi2>|^2 / (2 pi sigma)^2 (reduced dimension). Both packets must
/// share the spatial grid and sigma.
double phase_space_overlap(const WavePacket& wp1, const WavePacket& wp2);

/// The same overlap by direct phase-space quadrature of the two Wigner
/// functions; independent route used to validate the identity.
double phase_space_overlap_quadrature(const WavePacket& wp1, const WavePacket& wp2);

struct UncertaintyReport {
    double delta_e = 0.0;
    double delta_t = 0.0;
    double product = 0.0;  // equals sigma/2 for Glauber packets
};

/// Time and energy spreads of the packet's time factor, computed by grid
/// quadrature in position and in the Fourier (energy) representation.
UncertaintyReport uncertainty_products(const WavePacket& wp);
UncertaintyReport uncertainty_products(const GlauberPacket& chi);

/// Klein-Gordon residual -sigma^2 box(Psi) - m0^2 c^2 Psi for a plane wave
/// exp(i(p0 q0 + p1 q1)/sigma): the coefficient p0^2 - p1^2 - m0^2 c^2.
double kg_residual_plane_wave(double p0, double p1, double m0, double c);

struct ComplexField2D {
    int n0 = 0, n1 = 0;
    double x0_min = 0.0, x1_min = 0.0;
    double d0 = 0.0, d1 = 0.0;
    std::vector<cdouble> v;

    double x0_at(int i) const { return x0_min + i * d0; }
    double x1_at(int j) const { return x1_min + j * d1; }
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n1 + j; }
    std::size_t size() const { return static_cast<std::size_t>(n0) * n1; }
};

/// Gridded Klein-Gordon residual with second central differences; edge
/// entries are zero (interior stencil only).
std::vector<cdouble> kg_residual_field(const ComplexField2D& psi, double m0, double c,
                                       double sigma);

/// Least-squares eigenvalue a of box(Psi) = a Psi over interior points;
/// a*sigma^2 = -m0^2 c^2 for on-shell waves.
cdouble kg_fit_box_eigenvalue(const ComplexField2D& psi);

/// Effective mass sqrt(m0^2 - delta_p0^2/c^2); domain error if delta_p0 >= m0 c.
double effective_mass(double m0, double delta_p0, double c);

/// Free spectral evolution of the nonrelativistic limit: each spatial mode k
/// gains the phase exp(-i t (sigma k^2/2 m_x)(1 - mean_p2/(2 m_x^2 c^2))).
/// Returns n_steps+1 snapshots including psi0; norm is conserved.
std::vector<std::vector<cdouble>> evolve_nonrel(const std::vector<cdouble>& psi0,
                                                const SpatialGrid& grid, double m_x,
                                                double mean_p2, double sigma, double c,
                                                double t_span, int n_steps);

struct HydrogenCorrections {
    double h_c = 0.0;       // -alpha^2 <p^2>^2 / 4   [a.u.]
    double h1 = 0.0;        // -alpha^2 <p^4> / 8     [a.u.]
    double dirac_ref = 0.0; // -alpha^2 / 8           [a.u.]
};

/// Atomic-units corrections (hbar = m = 1, c = 1/alpha).
HydrogenCorrections hydrogen_corrections(double mean_p2, double mean_p4, double alpha);

/// Exact DFT between a centered k-lattice and its conjugate momentum lattice
/// (both lattices (index - n/2) * spacing; dual spacing 2 pi/(n * spacing)).
ComplexField2D k_to_momentum(const ComplexField2D& ftilde);
ComplexField2D momentum_to_k(const ComplexField2D& f_momentum);

struct SqrtOperatorResult {
    ComplexField2D field;
    double spacelike_leakage = 0.0;  // fraction of |f| mass outside the light cone
};

/// Applies -c sqrt(p0^2 - p1^2) in the conjugate momentum representation of
/// the k-grid field; spacelike components are zeroed and reported as the
/// leakage fraction. Acts as -m0 c^2 * identity on on-shell-supported input.
SqrtOperatorResult apply_sqrt_operator(const ComplexField2D& ftilde, double m0, double c);

}  // namespace relwave
