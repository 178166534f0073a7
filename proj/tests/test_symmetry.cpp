#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "relwave/dynamics.hpp"
#include "relwave/symmetry.hpp"

using namespace relwave;

namespace {

ExtendedState sample_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    ExtendedState x;
    x.q0 = unif(rng);
    x.q = {unif(rng), unif(rng), unif(rng)};
    x.p = {0.5 * unif(rng), 0.5 * unif(rng), 0.5 * unif(rng)};
    x.p0 = -1.5 + 0.3 * unif(rng);
    return x;
}

}  // namespace

TEST_CASE("antisymmetry of the rotation generator is enforced") {
    Mat3 bad = Mat3::identity();
    CHECK_THROWS_AS(GalileiElement(bad, {}, {}, 0.0), std::invalid_argument);
    CHECK_NOTHROW(GalileiElement(Mat3::antisymmetric({0.1, 0.2, 0.3}), {}, {}, 0.0));
}

TEST_CASE("infinitesimal Galilei action") {
    const auto [q1, t1] = galilei_act(GalileiElement::translation({1, 0, 0}), {0, 0, 0}, 5.0);
    CHECK(q1.x == doctest::Approx(-1.0));
    CHECK(t1 == doctest::Approx(5.0));

    const auto [q2, t2] = galilei_act(GalileiElement::boost_velocity({0.1, 0, 0}), {2, 0, 0}, 3.0);
    CHECK(q2.x == doctest::Approx(2.0 - 0.3));  // increment -t v
    CHECK(t2 == doctest::Approx(3.0));

    const auto [q3, t3] = galilei_act(GalileiElement::time_shift(1.0), {4, 5, 6}, 2.0);
    CHECK(q3.x == doctest::Approx(4.0));
    CHECK(t3 == doctest::Approx(1.0));
}

TEST_CASE("infinitesimal Lorentz action differs only in the time component") {
    const GalileiElement g = GalileiElement::boost_velocity({0.1, 0, 0});
    const auto [q, t] = lorentz_act_infinitesimal(g, {2, 0, 0}, 0.0, 1.0);
    CHECK(t == doctest::Approx(-0.2));
    CHECK(q.x == doctest::Approx(2.0));

    // v = 0 reduces to the Galilei action
    const GalileiElement r = GalileiElement::rotation({0, 0, 0.2});
    const auto [qg, tg] = galilei_act(r, {1, 2, 0}, 3.0);
    const auto [ql, tl] = lorentz_act_infinitesimal(r, {1, 2, 0}, 3.0, 1.0);
    CHECK(qg.x == doctest::Approx(ql.x));
    CHECK(qg.y == doctest::Approx(ql.y));
    CHECK(tg == doctest::Approx(tl));

    // q perpendicular to v: time increment is -tau only
    const GalileiElement gv(Mat3::zero(), {}, {0.3, 0, 0}, 0.7);
    const auto [qp, tp] = lorentz_act_infinitesimal(gv, {0, 1, 0}, 2.0, 1.0);
    CHECK(tp == doctest::Approx(2.0 - 0.7));
    (void)qp;
}

TEST_CASE("canonical lifts populate the expected blocks") {
    const GalileiElement g = GalileiElement::boost_velocity({0.2, 0, 0});

    const ExtendedLinearMap gal = lift_to_extended(g, 1.0, 1.0, LiftMode::GalileiLift);
    CHECK(gal.b_p[0] == doctest::Approx(0.2));
    CHECK(gal.b_p[3] == 0.0);
    CHECK(gal.a[3][0] == doctest::Approx(0.2));  // v/c row
    CHECK(gal.a[0][3] == 0.0);

    const ExtendedLinearMap lor = lift_to_extended(g, 1.0, 1.0, LiftMode::LorentzLift);
    CHECK(lor.b_p[0] == 0.0);
    CHECK(lor.a[3][0] == doctest::Approx(0.2));
    CHECK(lor.a[0][3] == doctest::Approx(0.2));  // +-v/c coupling, E > 0 branch

    const ExtendedLinearMap so4 =
        lift_to_extended(g, 1.0, 1.0, LiftMode::LorentzLift, EnergyBranch::SO4);
    CHECK(so4.a[0][3] == doctest::Approx(-0.2));

    // pure translation: A = 0
    const ExtendedLinearMap tr =
        lift_to_extended(GalileiElement::translation({1, 2, 3}), 1.0, 1.0, LiftMode::GalileiLift);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(tr.a[i][j] == 0.0);
    CHECK(tr.b_q[0] == doctest::Approx(1.0));
}

TEST_CASE("galilei lift shifts momentum by m v") {
    const GalileiElement g = GalileiElement::boost_velocity({0.2, 0, 0});
    const ExtendedLinearMap lift = lift_to_extended(g, 1.5, 1.0, LiftMode::GalileiLift);
    ExtendedState x;
    x.p = {0.4, 0.0, 0.0};
    x.p0 = -1.0;
    const ExtendedState y = apply_infinitesimal(lift, x);
    CHECK(y.p.x == doctest::Approx(0.4 - 1.5 * 0.2));       // p - m v
    CHECK(y.p0 == doctest::Approx(-1.0 + 0.2 * 0.4));       // p0 + v.p/c
}

TEST_CASE("finite boost of the rest state") {
    ExtendedState rest;
    rest.p0 = -1.0;
    const ExtendedState b = boost_finite(rest, {0.6, 0, 0}, 1.0);
    CHECK(b.p.x == doctest::Approx(-0.75).epsilon(1e-14));
    CHECK(b.p0 == doctest::Approx(-1.25).epsilon(1e-14));

    // identity at V = 0, group inverse, and the speed limit
    const ExtendedState same = boost_finite(rest, {0, 0, 0}, 1.0);
    CHECK(same.p0 == rest.p0);
    std::mt19937_64 rng(17);
    const ExtendedState x = sample_state(rng);
    const ExtendedState back = boost_finite(boost_finite(x, {0.6, 0.1, -0.2}, 1.0),
                                            {-0.6, -0.1, 0.2}, 1.0);
    for (int i = 0; i < 8; ++i)
        CHECK(std::abs(extended_coord(back, i) - extended_coord(x, i)) < 1e-12);
    CHECK_THROWS_AS(boost_finite(rest, {1.0, 0, 0}, 1.0), std::domain_error);
}

TEST_CASE("finite boosts preserve all extended brackets") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        Vec3 v{unif(rng), unif(rng), unif(rng)};
        v = (0.6 / norm(v)) * v;
        const auto report = check_canonical(
            [v](const ExtendedState& s) { return boost_finite(s, v, 1.0); }, 4, 7 + trial);
        CHECK(report.max_deviation <= 1e-10);
    }
}

TEST_CASE("a non-symplectic map is detected with deviation 1") {
    const auto report = check_canonical(
        [](const ExtendedState& s) {
            ExtendedState y = s;
            y.q.x *= 2.0;
            return y;
        },
        3);
    CHECK(report.max_deviation == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("composition of collinear boosts adds rapidities") {
    const double v1 = 0.5, v2 = 0.3;
    const double v12 = std::tanh(std::atanh(v1) + std::atanh(v2));
    std::mt19937_64 rng(31);
    const ExtendedState x = sample_state(rng);
    const ExtendedState two = boost_finite(boost_finite(x, {v1, 0, 0}, 1.0), {v2, 0, 0}, 1.0);
    const ExtendedState one = boost_finite(x, {v12, 0, 0}, 1.0);
    for (int i = 0; i < 8; ++i)
        CHECK(std::abs(extended_coord(two, i) - extended_coord(one, i)) < 1e-12);

    const auto report = check_canonical(
        [v1, v2](const ExtendedState& s) {
            return boost_finite(boost_finite(s, {v1, 0, 0}, 1.0), {v2, 0, 0}, 1.0);
        },
        4);
    CHECK(report.max_deviation <= 1e-10);
}

TEST_CASE("the free Hamiltonian is invariant under boosts") {
    const HamiltonianSpec spec = HamiltonianSpec::free_relativistic(1.0, 1.0);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unif(-0.7, 0.7);
    for (int trial = 0; trial < 25; ++trial) {
        const ExtendedState x = on_shell_state(1.0, 1.0, {unif(rng), unif(rng), unif(rng)});
        const Vec3 v{unif(rng), unif(rng), unif(rng)};
        const ExtendedState y = boost_finite(x, v, 1.0);
        CHECK(std::abs(hamiltonian_eval(spec, y) + 1.0) < 1e-10);
    }
}

TEST_CASE("velocity addition along the boost axis") {
    for (double w : {0.1, 0.5, 0.8}) {
        for (double v : {-0.6, 0.3, 0.7}) {
            const ExtendedState x = on_shell_state(1.0, 1.0, {w / std::sqrt(1 - w * w), 0, 0});
            const ExtendedState y = boost_finite(x, {v, 0, 0}, 1.0);
            const double w_prime = velocity_from_momentum(y, 1.0).x;
            CHECK(std::abs(w_prime - (w - v) / (1 - w * v)) < 1e-10);
        }
    }
}

TEST_CASE("four quarter turns on the SO4 branch return the identity") {
    std::mt19937_64 rng(55);
    const ExtendedState x = sample_state(rng);
    ExtendedState y = x;
    const Vec3 quarter{std::numbers::pi / 2.0, 0, 0};  // angle = |V|/c
    for (int i = 0; i < 4; ++i) y = boost_finite(y, quarter, 1.0, EnergyBranch::SO4);
    for (int i = 0; i < 8; ++i)
        CHECK(std::abs(extended_coord(y, i) - extended_coord(x, i)) < 1e-10);

    const auto report = check_canonical(
        [quarter](const ExtendedState& s) {
            return boost_finite(s, quarter, 1.0, EnergyBranch::SO4);
        },
        4);
    CHECK(report.max_deviation <= 1e-10);
}

TEST_CASE("finite boosts agree with the lift to second order in the velocity") {
    std::mt19937_64 rng(77);
    const ExtendedState x = sample_state(rng);
    auto deviation = [&x](double eps) {
        const Vec3 v{eps, 0, 0};
        const ExtendedState fin = boost_finite(x, v, 1.0);
        const ExtendedLinearMap lift =
            lift_to_extended(GalileiElement::boost_velocity(v), 1.0, 1.0, LiftMode::LorentzLift);
        const ExtendedState lin = apply_infinitesimal(lift, x);
        double d = 0.0;
        for (int i = 0; i < 8; ++i)
            d = std::max(d, std::abs(extended_coord(fin, i) - extended_coord(lin, i)));
        return d;
    };
    const double d1 = deviation(1e-3), d2 = deviation(5e-4);
    CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.05));  // O(eps^2) Richardson ratio
}

TEST_CASE("rotations composed with boosts stay canonical") {
    const Vec3 axis{0.3, -0.2, 0.9};
    const auto report = check_canonical(
        [axis](const ExtendedState& s) {
            return rotate_state(boost_finite(s, {0.4, 0.2, 0.1}, 1.0), axis);
        },
        4);
    CHECK(report.max_deviation <= 1e-10);
}

TEST_CASE("intrinsic frame boost") {
    CHECK(intrinsic_frame_boost(0.0, 1.0, 1.0) == 0.0);
    CHECK(intrinsic_frame_boost(0.75, 1.25, 1.0) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK_THROWS_AS(intrinsic_frame_boost(1.3, 1.25, 1.0), std::domain_error);

    // boosting the moment pair with the returned velocity kills the momentum
    const double v = intrinsic_frame_boost(0.4, 1.1, 1.0);
    ExtendedState m;
    m.p = {0.4, 0, 0};
    m.p0 = -1.1;
    CHECK(std::abs(boost_finite(m, {v, 0, 0}, 1.0).p.x) < 1e-12);
}
