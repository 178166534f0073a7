#pragma once
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "relwave/numerics.hpp"

namespace relwave {

/// Uniform rectangular grid over (q0, q_parallel), node-centered.
struct SpacetimeGrid {
    int n0 = 0;          // nodes along q0
    int n1 = 0;          // nodes along q_parallel
    double q0_min = 0.0;
    double q1_min = 0.0;
    double d0 = 0.0;     // spacing along q0
    double d1 = 0.0;     // spacing along q_parallel

    double q0_at(int i) const { return q0_min + i * d0; }
    double q1_at(int j) const { return q1_min + j * d1; }
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n1 + j; }
    std::size_t size() const { return static_cast<std::size_t>(n0) * n1; }
};

enum class BoundaryMode { Periodic, Reflecting };

/// Discretized action distribution: density n >= 0 and action shape S0 on the
/// grid. The full action is S = S0 + m0 c^2 u; only the shape enters fluxes
/// and residuals, the phase advances analytically with u.
struct ActionWaveState {
    SpacetimeGrid grid;
    std::vector<double> n;   // density, size grid.size()
    std::vector<double> s0;  // action shape at u = 0
    double u = 0.0;
    double m0 = 1.0;
    double c = 1.0;
    BoundaryMode boundary = BoundaryMode::Periodic;

    double action_at(std::size_t k) const { return s0[k] + m0 * c * c * u; }
};

/// Gaussian blob with a plane-wave action S0 = dS0*q0 + dS1*q1. The density
/// is normalized to unit total mass on the grid.
ActionWaveState make_gaussian_blob(const SpacetimeGrid& grid, double center0, double center1,
                                   double width0, double width1, double ds0, double ds1,
                                   double m0, double c,
                                   BoundaryMode boundary = BoundaryMode::Periodic);

/// Nodal derivative of a grid field: central differences in the interior,
/// second-order one-sided stencils at the edges.
std::vector<double> grid_derivative(const SpacetimeGrid& grid, std::span<const double> f,
                                    int axis);

/// Hamilton-Jacobi residual field (d0 S)^2 - (d1 S)^2 - m0^2 c^2.
std::vector<double> hj_residual(const ActionWaveState& state);

/// Advances the density by the continuity equation in universal time,
///   m0 du n = d0(n d0S) - d1(n d1S),
/// with a conservative first-order upwind flux and explicit Euler steps.
/// Throws std::invalid_argument before stepping if du violates the CFL bound
/// du * max(|d0S|, |d1S|) / m0 <= 0.5 * min(grid spacings).
ActionWaveState evolve(const ActionWaveState& state, double du, int n_steps);

struct SpacetimeMoments {
    double mean_t = 0.0;
    double mean_e = 0.0;
    double mean_p_parallel = 0.0;
    double var_t = 0.0;
    double total_mass = 0.0;
};

/// Density-weighted averages; mean_t = <q0>/c, mean_E = -c <d0 S>.
/// Throws std::domain_error when the total mass vanishes.
SpacetimeMoments spacetime_moments(const ActionWaveState& state);

double total_mass(const ActionWaveState& state);

/// Least-squares slope of mean_t against u. Requires >= 3 samples and
/// non-degenerate u values; the residual certifies linearity.
LineFit linear_time_slope(std::span<const std::pair<double, double>> u_and_mean_t);

/// CSV columns q0,q1,n,S.
void write_field_csv(const std::filesystem::path& path, const ActionWaveState& state);

/// CSV columns u,mean_t,mean_E,mean_p.
void write_moments_csv(const std::filesystem::path& path,
                       std::span<const std::pair<double, SpacetimeMoments>> series);

}  // namespace relwave
