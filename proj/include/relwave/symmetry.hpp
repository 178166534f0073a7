#pragma once
#include <cstdint>
#include <functional>
#include <utility>

#include "relwave/core.hpp"

namespace relwave {

/// Infinitesimal Galilei element gamma(xi, d, v, tau): xi is an antisymmetric
/// rotation generator, d a space translation, v a boost velocity, tau a time
/// translation. xi is validated to be antisymmetric within 1e-14.
struct GalileiElement {
    Mat3 xi;
    Vec3 d{};
    Vec3 v{};
    double tau = 0.0;

    GalileiElement() = default;
    GalileiElement(const Mat3& xi_, const Vec3& d_, const Vec3& v_, double tau_);

    static GalileiElement translation(const Vec3& d);
    static GalileiElement boost_velocity(const Vec3& v);
    static GalileiElement rotation(const Vec3& axis_angle);
    static GalileiElement time_shift(double tau);
};

/// [q', t'] = [q, t] + [xi q - d - t v, -tau].
std::pair<Vec3, double> galilei_act(const GalileiElement& g, const Vec3& q, double t);

/// Same spatial action; the time increment becomes -v.q/c^2 - tau.
std::pair<Vec3, double> lorentz_act_infinitesimal(const GalileiElement& g, const Vec3& q,
                                                  double t, double c);

enum class LiftMode { GalileiLift, LorentzLift };
enum class EnergyBranch { Lorentz, SO4 };  // E > 0 hyperbolic / E < 0 circular

/// Infinitesimal canonical map on the extended phase space, acting on column
/// vectors ordered (spatial, time-energy): indices 0..2 spatial, 3 = q0/p0.
///   q' = q - b_q - A^T q,   p' = p - b_p + A p.
/// The q0 component of b_q stores c*tau (time translation in length units).
struct ExtendedLinearMap {
    double a[4][4] = {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};
    double b_q[4] = {0, 0, 0, 0};
    double b_p[4] = {0, 0, 0, 0};
    EnergyBranch branch = EnergyBranch::Lorentz;
};

/// Canonical lift of the Galilei action to the extended phase space.
/// GalileiLift puts m*v into the momentum shift b_p; LorentzLift moves the
/// velocity into the matrix block instead (b_p = 0), which rebuilds the
/// infinitesimal Lorentz (or, on the other branch, SO(4)) action.
ExtendedLinearMap lift_to_extended(const GalileiElement& g, double m, double c,
                                   LiftMode mode, EnergyBranch branch = EnergyBranch::Lorentz);

ExtendedState apply_infinitesimal(const ExtendedLinearMap& map, const ExtendedState& x);

/// Finite boost with velocity V (Lorentz branch, |V| < c): the components
/// parallel to V and the (q0, p0) pair transform with cosh/sinh of the
/// rapidity rho = atanh(|V|/c); perpendicular components are unchanged.
/// On the SO4 branch the same construction integrates to a rotation in the
/// (parallel, time) planes; the rotation angle is |V|/c.
ExtendedState boost_finite(const ExtendedState& x, const Vec3& v, double c,
                           EnergyBranch branch = EnergyBranch::Lorentz);

/// Spatial rotation of q and p by the axis-angle vector (q0, p0 fixed).
ExtendedState rotate_state(const ExtendedState& x, const Vec3& axis_angle);

using StateMap = std::function<ExtendedState(const ExtendedState&)>;

struct CanonicalReport {
    double max_deviation = 0.0;  // max |{x'_i, x'_j}^e - canonical value|
    int samples = 0;
};

/// Checks preservation of all extended Poisson brackets on random sample
/// states, via the numerical Jacobian of the map. Exact group elements
/// (boosts, rotations) must come out at round-off level.
CanonicalReport check_canonical(const StateMap& map, int samples,
                                std::uint64_t seed = 42, double h = 1e-2);
CanonicalReport check_canonical(const ExtendedLinearMap& map, int samples,
                                std::uint64_t seed = 42, double h = 1e-2);

/// Velocity of the frame in which the mean momentum vanishes:
/// tanh(rho) = c * mean_p_parallel / mean_E. Throws std::domain_error for a
/// superluminal moment pair.
double intrinsic_frame_boost(double mean_p_parallel, double mean_e, double c);

}  // namespace relwave
