#include <cmath>
#include <random>

#include "doctest.h"
#include "relwave/core.hpp"
#include "relwave/dynamics.hpp"
#include "relwave/symmetry.hpp"

using namespace relwave;

namespace {

ExtendedState random_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    ExtendedState x;
    x.q0 = unif(rng);
    x.q = {unif(rng), unif(rng), unif(rng)};
    x.p = {unif(rng), unif(rng), unif(rng)};
    x.p0 = -2.0 + 0.2 * unif(rng);  // timelike for |p| <= sqrt(3)
    return x;
}

}  // namespace

TEST_CASE("units are validated") {
    CHECK_THROWS_AS(Units(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Units(1.0, 0.0), std::invalid_argument);
    const Units u;
    CHECK(u.c == 1.0);
    CHECK(u.sigma == 1.0);
}

TEST_CASE("canonical pairs under the numerical bracket") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 10; ++trial) {
        const ExtendedState x = random_state(rng);
        for (int mu = 0; mu < 4; ++mu) {
            for (int nu = 0; nu < 4; ++nu) {
                const Observable q_mu = [mu](const ExtendedState& s) { return extended_coord(s, mu); };
                const Observable q_nu = [nu](const ExtendedState& s) { return extended_coord(s, nu); };
                const Observable p_mu = [mu](const ExtendedState& s) { return extended_coord(s, 4 + mu); };
                const Observable p_nu = [nu](const ExtendedState& s) { return extended_coord(s, 4 + nu); };
                const double expected = mu == nu ? 1.0 : 0.0;
                CHECK(std::abs(poisson_bracket_numeric(q_mu, p_nu, x) - expected) < 1e-10);
                CHECK(std::abs(poisson_bracket_numeric(q_mu, q_nu, x)) < 1e-10);
                CHECK(std::abs(poisson_bracket_numeric(p_mu, p_nu, x)) < 1e-10);
            }
        }
    }
}

TEST_CASE("bracket of the free Hamiltonian with a spatial momentum vanishes") {
    ExtendedState x;
    x.p0 = -std::sqrt(2.0);
    x.p = {1.0, 0.0, 0.0};
    const HamiltonianSpec spec = HamiltonianSpec::free_relativistic(1.0, 1.0);
    const Observable h = [&spec](const ExtendedState& s) { return hamiltonian_eval(spec, s); };
    const Observable p1 = [](const ExtendedState& s) { return s.p.x; };
    // the Hamiltonian has no q dependence, so the analytic bracket is zero
    CHECK(std::abs(poisson_bracket_numeric(h, p1, x)) < 1e-8);
}

TEST_CASE("non-finite observable raises an evaluation error") {
    const Observable bad = [](const ExtendedState&) { return std::nan(""); };
    const Observable good = [](const ExtendedState& s) { return s.q0; };
    CHECK_THROWS_AS(poisson_bracket_numeric(bad, good, ExtendedState{}), std::domain_error);
}

TEST_CASE("mass-shell residual") {
    ExtendedState rest;
    rest.p0 = -1.0;
    CHECK(mass_shell_residual(rest, 1.0, 1.0) == 0.0);

    ExtendedState boosted;
    boosted.p0 = -std::sqrt(2.0);
    boosted.p = {1.0, 0.0, 0.0};
    CHECK(std::abs(mass_shell_residual(boosted, 1.0, 1.0)) < 1e-15);

    ExtendedState off;
    off.p0 = -2.0;
    off.p = {1.0, 0.0, 0.0};
    CHECK(mass_shell_residual(off, 1.0, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("mass-shell residual is invariant under finite boosts") {
    std::mt19937_64 rng(321);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const ExtendedState x = random_state(rng);
        const Vec3 v{0.5 * unif(rng), 0.5 * unif(rng), 0.5 * unif(rng)};
        const ExtendedState y = boost_finite(x, v, 1.0);
        CHECK(std::abs(mass_shell_residual(y, 1.0, 1.0) - mass_shell_residual(x, 1.0, 1.0)) < 1e-10);
    }
}

TEST_CASE("on-shell factory and state predicates") {
    const ExtendedState x = on_shell_state(1.0, 1.0, {3.0, 0.0, 0.0});
    CHECK(x.p0 == doctest::Approx(-std::sqrt(10.0)).epsilon(1e-15));
    CHECK(x.physical());
    CHECK(x.timelike_gap() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(on_shell_state(-1.0, 1.0, {}), std::invalid_argument);
}
