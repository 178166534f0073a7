#pragma once
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "relwave/core.hpp"

namespace relwave {

enum class HamiltonianKind { FreeRelativistic, Nonrelativistic, WithPotential };

/// Static external potential V(q) with analytic gradient.
struct PotentialField {
    std::function<double(const Vec3&)> value;
    std::function<Vec3(const Vec3&)> gradient;
};

/// Ordinary Hamilton function H(q, p, t) for the nonrelativistic embedding
/// H^e = H + c*p0.
using NonrelHamiltonian = std::function<double(const Vec3& q, const Vec3& p, double t)>;

/// Tagged choice of extended Hamiltonian.
///   FreeRelativistic:  H^e = -c*sqrt(p0^2 - |p|^2); equals -m0 c^2 on shell.
///   WithPotential:     H^e = -c*sqrt((p0 + V/c)^2 - |p|^2).
///   Nonrelativistic:   H^e = H(q,p,t) + c*p0, which evolves with u = t.
struct HamiltonianSpec {
    HamiltonianKind kind = HamiltonianKind::FreeRelativistic;
    double m0 = 1.0;
    double c = 1.0;
    PotentialField potential;       // WithPotential only
    NonrelHamiltonian base_nonrel;  // Nonrelativistic only

    static HamiltonianSpec free_relativistic(double m0, double c);
    static HamiltonianSpec with_potential(double m0, double c, PotentialField v);
    static HamiltonianSpec nonrelativistic(double m0, double c, NonrelHamiltonian h);
};

/// Extended Hamiltonian value. Throws std::domain_error naming the radicand
/// when the (effective) timelike condition fails.
double hamiltonian_eval(const HamiltonianSpec& spec, const ExtendedState& x);

struct ExtendedDerivative {
    double dq0 = 0.0;
    Vec3 dq{};
    double dp0 = 0.0;
    Vec3 dp{};
};

/// Canonical equations of motion in universal time u.
/// Free case: d_u q0 = -c p0/R, d_u q = c p/R with R = sqrt(p0^2 - |p|^2),
/// and d_u p = 0, d_u p0 = 0 exactly.
ExtendedDerivative eom_rhs(const HamiltonianSpec& spec, const ExtendedState& x);

/// Classical fixed-step 4th-order integration; returns n+1 states including
/// x0. Free-flow momenta are bit-identical across steps and coordinates are
/// affine in u. A domain error mid-trajectory aborts with the step index.
/// For WithPotential, halve du until observables stabilize.
std::vector<ExtendedState> integrate_trajectory(const HamiltonianSpec& spec,
                                                const ExtendedState& x0, double du,
                                                int n_steps);

/// v = -c p / p0; |v| < c whenever the state is timelike.
Vec3 velocity_from_momentum(const ExtendedState& x, double c);

/// Inertial parameters 1/I_mu = (1/p_mu) dH^e_0/dp_mu of the free flow.
/// On shell they equal (-m0, m0, m0, m0); the p_mu = 0 components carry the
/// same limit values.
struct InertialParameters {
    double i0 = 0.0;
    double i1 = 0.0;
    double i2 = 0.0;
    double i3 = 0.0;
};
InertialParameters inertial_parameters(const ExtendedState& x, double c);

/// CSV columns u,q0,q1,q2,q3,p0,p1,p2,p3 with round-trip double formatting.
void write_trajectory_csv(const std::filesystem::path& path,
                          std::span<const ExtendedState> trajectory);

}  // namespace relwave
