#include <cmath>
#include <filesystem>
#include <vector>

#include "doctest.h"
#include "relwave/actionwave.hpp"
#include "relwave/csv.hpp"
#include "relwave/dynamics.hpp"

using namespace relwave;

namespace {

const double kSqrt2 = std::sqrt(2.0);

SpacetimeGrid square_grid(int n, double lo, double hi) {
    SpacetimeGrid g;
    g.n0 = g.n1 = n;
    g.q0_min = g.q1_min = lo;
    g.d0 = g.d1 = (hi - lo) / (n - 1);
    return g;
}

}  // namespace

TEST_CASE("hamilton-jacobi residual of plane-wave actions") {
    const SpacetimeGrid g = square_grid(32, -1.0, 1.0);

    // on-shell plane wave: a^2 - b^2 = m0^2 c^2
    const ActionWaveState on =
        make_gaussian_blob(g, 0, 0, 0.3, 0.3, -kSqrt2, 1.0, 1.0, 1.0);
    for (double r : hj_residual(on)) CHECK(std::abs(r) < 1e-12);

    const ActionWaveState rest = make_gaussian_blob(g, 0, 0, 0.3, 0.3, -1.0, 0.0, 1.0, 1.0);
    for (double r : hj_residual(rest)) CHECK(std::abs(r) < 1e-12);

    const ActionWaveState off = make_gaussian_blob(g, 0, 0, 0.3, 0.3, -2.0, 1.0, 1.0, 1.0);
    for (double r : hj_residual(off)) CHECK(r == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("blob advects along the characteristics of the free flow") {
    // flux velocity (-d0S, d1S)/m0 must equal the trajectory velocity
    const SpacetimeGrid g = square_grid(128, -3.0, 3.0);
    const ActionWaveState st =
        make_gaussian_blob(g, -0.7, -0.5, 0.25, 0.25, -kSqrt2, 1.0, 1.0, 1.0);
    const SpacetimeMoments m0 = spacetime_moments(st);

    const double du = 0.01;
    const int steps = 100;  // u: 0 -> 1
    const ActionWaveState ev = evolve(st, du, steps);
    const SpacetimeMoments m1 = spacetime_moments(ev);

    CHECK(ev.u == doctest::Approx(1.0));
    CHECK(m1.mean_t - m0.mean_t == doctest::Approx(kSqrt2).epsilon(0.02));
    // centroid velocity against the canonical equations of motion
    const HamiltonianSpec spec = HamiltonianSpec::free_relativistic(1.0, 1.0);
    ExtendedState x;
    x.p0 = -kSqrt2;
    x.p = {1.0, 0.0, 0.0};
    const ExtendedDerivative d = eom_rhs(spec, x);
    CHECK((m1.mean_t - m0.mean_t) / 1.0 == doctest::Approx(d.dq0).epsilon(0.02));
}

TEST_CASE("rest action translates the blob in q0 only") {
    const SpacetimeGrid g = square_grid(96, -3.0, 3.0);
    const ActionWaveState st = make_gaussian_blob(g, -1.0, 0.4, 0.3, 0.3, -1.0, 0.0, 1.0, 1.0);
    const ActionWaveState ev = evolve(st, 0.01, 150);
    const SpacetimeMoments before = spacetime_moments(st), after = spacetime_moments(ev);
    CHECK(after.mean_t - before.mean_t == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(after.mean_p_parallel == doctest::Approx(0.0));
    // spatial centroid is unchanged
    double c1_before = 0, c1_after = 0, mass = 0;
    for (int i = 0; i < g.n0; ++i)
        for (int j = 0; j < g.n1; ++j) {
            c1_before += st.n[g.idx(i, j)] * g.q1_at(j);
            c1_after += ev.n[g.idx(i, j)] * g.q1_at(j);
            mass += st.n[g.idx(i, j)];
        }
    CHECK(std::abs(c1_after - c1_before) / mass < 1e-10);
}

TEST_CASE("CFL violation raises a configuration error and leaves the state alone") {
    const SpacetimeGrid g = square_grid(64, -2.0, 2.0);
    const ActionWaveState st = make_gaussian_blob(g, 0, 0, 0.3, 0.3, -kSqrt2, 1.0, 1.0, 1.0);
    const std::vector<double> n_copy = st.n;
    CHECK_THROWS_WITH_AS(evolve(st, 1.0, 10), doctest::Contains("CFL"), std::invalid_argument);
    CHECK(st.n == n_copy);
}

TEST_CASE("total mass is conserved over a thousand periodic steps") {
    const SpacetimeGrid g = square_grid(96, -2.0, 2.0);
    const ActionWaveState st =
        make_gaussian_blob(g, 0.0, 0.0, 0.25, 0.25, -1.25, 0.75, 1.0, 1.0);
    const double mass0 = total_mass(st);
    const ActionWaveState ev = evolve(st, 0.008, 1000);
    CHECK(std::abs(total_mass(ev) - mass0) / mass0 <= 1e-8);
    // the monotone upwind update keeps the density nonnegative
    double min_n = 1e300;
    for (double v : ev.n) min_n = std::min(min_n, v);
    CHECK(min_n >= 0.0);
}

TEST_CASE("reflecting boundaries also conserve mass") {
    const SpacetimeGrid g = square_grid(64, -2.0, 2.0);
    const ActionWaveState st = make_gaussian_blob(g, 0.0, 0.0, 0.2, 0.2, -1.0, 0.0, 1.0, 1.0,
                                                  BoundaryMode::Reflecting);
    const double mass0 = total_mass(st);
    const ActionWaveState ev = evolve(st, 0.01, 400);
    CHECK(std::abs(total_mass(ev) - mass0) / mass0 <= 1e-8);
}

TEST_CASE("space-time moments of symmetric blobs") {
    const SpacetimeGrid g = square_grid(128, -2.0, 2.0);
    {
        const ActionWaveState st = make_gaussian_blob(g, 0, 0, 0.25, 0.25, -1.0, 0.0, 1.0, 1.0);
        const SpacetimeMoments m = spacetime_moments(st);
        CHECK(std::abs(m.mean_t) < 1e-12);
        CHECK(m.mean_e == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(m.mean_p_parallel) < 1e-12);
        CHECK(m.var_t == doctest::Approx(0.25 * 0.25).epsilon(1e-3));
    }
    {
        const ActionWaveState st =
            make_gaussian_blob(g, 0, 0, 0.25, 0.25, -kSqrt2, 1.0, 1.0, 1.0);
        CHECK(spacetime_moments(st).mean_e == doctest::Approx(kSqrt2).epsilon(1e-12));
    }
    {
        const SpacetimeGrid wide = square_grid(128, -1.0, 5.0);
        const ActionWaveState st =
            make_gaussian_blob(wide, 3.0, 1.0, 0.25, 0.25, -1.0, 0.0, 1.0, 1.0);
        CHECK(spacetime_moments(st).mean_t == doctest::Approx(3.0).epsilon(1e-10));
    }
}

TEST_CASE("zero mass is a domain error") {
    const SpacetimeGrid g = square_grid(16, -1.0, 1.0);
    ActionWaveState st = make_gaussian_blob(g, 0, 0, 0.3, 0.3, -1.0, 0.0, 1.0, 1.0);
    std::fill(st.n.begin(), st.n.end(), 0.0);
    CHECK_THROWS_AS(spacetime_moments(st), std::domain_error);
}

TEST_CASE("linear time law: slope equals mean energy over rest energy") {
    const SpacetimeGrid g = square_grid(128, -3.0, 5.0);

    auto slope_for = [&](double ds0, double ds1) {
        const ActionWaveState st =
            make_gaussian_blob(g, -1.0, -1.0, 0.3, 0.3, ds0, ds1, 1.0, 1.0);
        std::vector<std::pair<double, double>> series;
        ActionWaveState cur = st;
        series.emplace_back(cur.u, spacetime_moments(cur).mean_t);
        for (int chunk = 0; chunk < 20; ++chunk) {
            cur = evolve(cur, 0.01, 10);
            series.emplace_back(cur.u, spacetime_moments(cur).mean_t);
        }
        return linear_time_slope(series);
    };

    const LineFit rest = slope_for(-1.0, 0.0);  // <E> = m0 c^2
    CHECK(rest.slope == doctest::Approx(1.0).epsilon(0.01));
    CHECK(rest.rms_residual < 1e-6);

    const LineFit boosted = slope_for(-1.25, 0.75);  // <E> = 1.25 m0 c^2
    CHECK(boosted.slope == doctest::Approx(1.25).epsilon(0.01));
    CHECK(boosted.rms_residual < 1e-6);
}

TEST_CASE("degenerate slope input is rejected") {
    std::vector<std::pair<double, double>> two = {{1.0, 0.1}, {1.0, 0.2}};
    CHECK_THROWS_AS(linear_time_slope(two), std::domain_error);
    std::vector<std::pair<double, double>> flat = {{1.0, 0.1}, {1.0, 0.2}, {1.0, 0.3}};
    CHECK_THROWS_AS(linear_time_slope(flat), std::domain_error);
}

TEST_CASE("spatial marginal follows the plain continuity equation") {
    // the q0 flux telescopes out of the marginal, leaving the 1D upwind
    // update for m0 du N + d1(N d1S/m0) = 0
    const SpacetimeGrid g = square_grid(96, -2.0, 2.0);
    const double b = 0.4;  // d1S
    const double ds0 = -std::sqrt(1.0 + b * b);
    const ActionWaveState st = make_gaussian_blob(g, 0, 0, 0.12, 0.25, ds0, b, 1.0, 1.0);

    auto marginal = [&](const ActionWaveState& s) {
        std::vector<double> n1(g.n1, 0.0);
        for (int j = 0; j < g.n1; ++j)
            for (int i = 0; i < g.n0; ++i) n1[j] += s.n[g.idx(i, j)] * g.d0;
        return n1;
    };

    const double du = 0.01;
    const int steps = 120;
    const auto evolved_marginal = marginal(evolve(st, du, steps));

    // 1D reference: same upwind scheme for dt N + d1(w N) = 0, w = b/m0
    std::vector<double> ref = marginal(st);
    const double w = b / st.m0;
    for (int s = 0; s < steps; ++s) {
        std::vector<double> next = ref;
        for (int j = 0; j < g.n1; ++j) {
            const int jn = (j + 1) % g.n1;
            const double flux = w >= 0 ? w * ref[j] : w * ref[jn];
            next[j] -= du * flux / g.d1;
            next[jn] += du * flux / g.d1;
        }
        ref.swap(next);
    }
    for (int j = 0; j < g.n1; ++j) CHECK(std::abs(evolved_marginal[j] - ref[j]) < 1e-12);
}

TEST_CASE("evolution preserves the action shape and its residual") {
    const SpacetimeGrid g = square_grid(48, -2.0, 2.0);
    const ActionWaveState st = make_gaussian_blob(g, 0, 0, 0.3, 0.3, -kSqrt2, 1.0, 1.0, 1.0);
    const auto r0 = hj_residual(st);
    const ActionWaveState ev = evolve(st, 0.01, 50);
    const auto r1 = hj_residual(ev);
    for (std::size_t k = 0; k < r0.size(); ++k) CHECK(r0[k] == r1[k]);
    // the full action gained the analytic m0 c^2 u phase
    CHECK(ev.action_at(0) - st.s0[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("field and moments csv exports") {
    const SpacetimeGrid g = square_grid(16, -1.0, 1.0);
    const ActionWaveState st = make_gaussian_blob(g, 0, 0, 0.3, 0.3, -1.0, 0.0, 1.0, 1.0);
    const auto dir = std::filesystem::temp_directory_path();
    write_field_csv(dir / "relwave_field.csv", st);
    const CsvTable f = read_csv(dir / "relwave_field.csv");
    CHECK(f.header == std::vector<std::string>{"q0", "q1", "n", "S"});
    CHECK(f.rows.size() == g.size());

    std::vector<std::pair<double, SpacetimeMoments>> series = {
        {0.0, spacetime_moments(st)}};
    write_moments_csv(dir / "relwave_moments.csv", series);
    const CsvTable m = read_csv(dir / "relwave_moments.csv");
    CHECK(m.header == std::vector<std::string>{"u", "mean_t", "mean_E", "mean_p"});
    CHECK(m.rows.size() == 1);
}
