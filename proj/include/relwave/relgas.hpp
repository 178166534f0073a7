#pragma once
#include <complex>
#include <limits>
#include <span>
#include <vector>

#include "relwave/vec3.hpp"

namespace relwave {

/// Nondegenerate relativistic gas parameters. Temperature is measured in
/// energy units (k_B absorbed into T).
struct GasParams {
    double mu = 0.0;   // chemical potential [energy]
    double temp = 1.0; // temperature [energy]
    double m0 = 1.0;
    double c = 1.0;
    double volume = 1.0;
    double h = 1.0;    // phase-cell constant

    GasParams() = default;
    GasParams(double mu_, double temp_, double m0_, double c_, double volume_, double h_);
};

/// Single-particle energy sqrt(p^2 c^2 + m0^2 c^4).
double particle_energy(double p_abs, double m0, double c);

/// Equilibrium distribution f = (2/h^3) exp((mu - eps_p)/T); strictly
/// positive and monotone decreasing in |p|.
double equilibrium_f(const GasParams& params, const Vec3& p);

struct ThermoIntegrals {
    double n_particles = 0.0;
    double energy = 0.0;          // momentum-space quadrature
    double energy_gt_route = 0.0; // energy-space g_T quadrature (cross-check)
};

/// Particle number and total energy up to the cutoff energy eps_max
/// (infinity allowed), both by adaptive quadrature; the energy is evaluated
/// twice through independent parameterizations and cross-checked.
ThermoIntegrals thermo_integrals(const GasParams& params,
                                 double eps_max = std::numeric_limits<double>::infinity());

/// Energy integrand g_T(eps) = eps^2 sqrt(eps^2 - m0^2 c^4) exp(-eps/T).
double gt_integrand(double eps, double temp, double m0, double c);

/// Argmax of g_T on (m0 c^2, 20 m0 c^2) by golden-section search.
double gt_argmax(double temp, double m0, double c);

/// Cubic momentum grid [p_min, p_min + (n-1) dp]^3.
struct MomentumGrid3 {
    int n = 0;
    double p_min = 0.0;
    double dp = 0.0;
    double p_at(int i) const { return p_min + i * dp; }
    std::size_t idx(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n + j) * n + k;
    }
    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
};

struct FokkerPlanckReport {
    std::vector<double> residual;  // gamma * div_p((p/m) f + T grad_p f); zero at boundary
    double term_scale = 0.0;       // max interior |gamma div_p((p/m) f)|
    double interior_max = 0.0;     // max interior |residual|
};

/// Stationarity residual of the homogeneous Fokker-Planck equation with
/// m = eps_p/c^2, evaluated on a supplied density field with a conservative
/// staggered flux (exponentially fitted drift-diffusion faces, second-order
/// consistent). The equilibrium distribution is a discrete steady state.
FokkerPlanckReport fokker_planck_residual(const GasParams& params, const MomentumGrid3& grid,
                                          double gamma,
                                          std::span<const double> f = {});

/// v_max/c = sqrt(1 - (m0 c^2/eps_max)^2): the fraction of the velocity
/// domain [0, c) kept by an energy cutoff.
double velocity_cutoff_fraction(double eps_max, double m0, double c);

/// Fourier-series coefficients f~_n = int_{-D}^{D} exp(i n pi X/D) f dX for
/// n = -n_max..n_max, from uniform samples at X_j = -D + 2D j/M (periodic
/// trapezoid). reconstruct evaluates (1/2D) sum_n exp(-i n pi X/D) f~_n.
std::vector<std::complex<double>> finite_fourier(std::span<const double> samples,
                                                 double half_width, int n_max);
double finite_fourier_reconstruct(std::span<const std::complex<double>> coeffs,
                                  double half_width, double x);

/// Classical sound velocity sqrt(T/m0); equals c exactly at T = m0 c^2.
double sound_velocity(double temp, double m0);

}  // namespace relwave
