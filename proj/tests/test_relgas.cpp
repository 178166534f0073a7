#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "relwave/relgas.hpp"

using namespace relwave;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

GasParams model_gas(double mu = 0.0, double temp = 1.0) {
    return GasParams(mu, temp, 1.0, 1.0, 1.0, 1.0);
}

}  // namespace

TEST_CASE("equilibrium distribution values") {
    const GasParams g = model_gas();
    CHECK(equilibrium_f(g, {0, 0, 0}) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));

    // the ratio to the rest value removes the chemical potential
    const GasParams g2 = model_gas(0.7, 0.8);
    const Vec3 p{1.2, -0.4, 0.3};
    const double eps = particle_energy(norm(p), 1.0, 1.0);
    CHECK(equilibrium_f(g2, p) / equilibrium_f(g2, {0, 0, 0}) ==
          doctest::Approx(std::exp((1.0 - eps) / 0.8)).epsilon(1e-13));

    // decreasing in |p|, vanishing at large momentum
    double prev = equilibrium_f(g, {0, 0, 0});
    for (double pm : {0.5, 1.0, 2.0, 5.0, 20.0}) {
        const double v = equilibrium_f(g, {pm, 0, 0});
        CHECK(v < prev);
        CHECK(v > 0.0);
        prev = v;
    }
    CHECK(equilibrium_f(g, {50.0, 0, 0}) < 1e-20);
    CHECK_THROWS_AS(GasParams(0, -1, 1, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("thermodynamic integrals: two energy routes agree") {
    const ThermoIntegrals t = thermo_integrals(model_gas(), kInf);
    CHECK(std::abs(t.energy - t.energy_gt_route) <= 1e-7 * t.energy);
    // independent quadrature oracle values (mu=0, T=m0c^2, V=h=1)
    CHECK(t.n_particles == doctest::Approx(40.83665557775).epsilon(1e-8));
    CHECK(t.energy == doctest::Approx(137.6375453935).epsilon(1e-8));

    const ThermoIntegrals cut = thermo_integrals(model_gas(), 3.0);
    CHECK(std::abs(cut.energy - cut.energy_gt_route) <= 1e-7 * cut.energy);
}

TEST_CASE("empty energy range returns zeros") {
    const ThermoIntegrals t = thermo_integrals(model_gas(), 1.0);  // eps_max = m0 c^2
    CHECK(t.n_particles == 0.0);
    CHECK(t.energy == 0.0);
    CHECK_THROWS_AS(thermo_integrals(model_gas(), 0.5), std::domain_error);
}

TEST_CASE("particle number scales exactly with exp(mu/T)") {
    for (double temp : {0.5, 1.0, 2.0}) {
        const ThermoIntegrals n0 = thermo_integrals(model_gas(0.0, temp), kInf);
        const ThermoIntegrals n1 = thermo_integrals(model_gas(1.0, temp), kInf);
        CHECK(n1.n_particles / n0.n_particles ==
              doctest::Approx(std::exp(1.0 / temp)).epsilon(1e-12));
    }
}

TEST_CASE("cutoff at three rest energies captures the pinned energy fraction") {
    // regression constant from an independent quadrature of g_T
    const ThermoIntegrals full = thermo_integrals(model_gas(), kInf);
    const ThermoIntegrals cut = thermo_integrals(model_gas(), 3.0);
    CHECK(cut.energy / full.energy == doctest::Approx(0.3093813159681).epsilon(1e-6));
}

TEST_CASE("gas energy integrand peaks near three rest energies") {
    const double star = gt_argmax(1.0, 1.0, 1.0);
    // dense-scan oracle root of the stationarity condition
    CHECK(star == doctest::Approx(3.1149075414768).epsilon(1e-7));
    CHECK(star == doctest::Approx(3.11).epsilon(0.01 / 3.11));
    CHECK(std::abs(star / 3.0 - 1.0) <= 0.05);  // the nominal 3 m0 c^2 cutoff

    // increasing in T, approaching the rest energy from above as T -> 0
    double prev = 0.0;
    for (double temp : {0.1, 0.5, 1.0, 1.5, 2.0}) {
        const double s = gt_argmax(temp, 1.0, 1.0);
        CHECK(s > prev);
        prev = s;
    }
    CHECK(gt_argmax(0.02, 1.0, 1.0) < 1.1);
}

TEST_CASE("equilibrium is a discrete steady state of the Fokker-Planck flux") {
    const GasParams g = model_gas();
    MomentumGrid3 grid;
    grid.n = 32;
    grid.p_min = -4.0;
    grid.dp = 8.0 / (grid.n - 1);
    const FokkerPlanckReport rep = fokker_planck_residual(g, grid, 0.7);
    CHECK(rep.term_scale > 0.0);
    CHECK(rep.interior_max <= 1e-6 * rep.term_scale);
}

TEST_CASE("perturbed density produces the analytic drift residual") {
    const GasParams g = model_gas();
    MomentumGrid3 grid;
    grid.n = 48;
    grid.p_min = -4.0;
    grid.dp = 8.0 / (grid.n - 1);
    const double gamma = 0.7;

    std::vector<double> f(grid.size());
    for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j)
            for (int k = 0; k < grid.n; ++k) {
                const Vec3 p{grid.p_at(i), grid.p_at(j), grid.p_at(k)};
                f[grid.idx(i, j, k)] = equilibrium_f(g, p) * (1.0 + 0.1 * p.x);
            }
    const FokkerPlanckReport rep = fokker_planck_residual(g, grid, gamma, f);

    // analytic residual gamma * div(0.1 T f e_x) = -0.1 gamma f p_x c^2/eps
    double max_err = 0.0, scale = 0.0;
    for (int i = 1; i < grid.n - 1; ++i)
        for (int j = 1; j < grid.n - 1; ++j)
            for (int k = 1; k < grid.n - 1; ++k) {
                const Vec3 p{grid.p_at(i), grid.p_at(j), grid.p_at(k)};
                const double eps = particle_energy(norm(p), 1.0, 1.0);
                const double expected = -0.1 * gamma * equilibrium_f(g, p) * p.x / eps;
                const double got = rep.residual[grid.idx(i, j, k)];
                max_err = std::max(max_err, std::abs(got - expected));
                scale = std::max(scale, std::abs(expected));
            }
    CHECK(max_err <= 0.02 * scale);
    CHECK(rep.interior_max > 0.01 * rep.term_scale);  // the residual is genuinely O(0.1)
}

TEST_CASE("zero friction gives an identically zero residual") {
    MomentumGrid3 grid;
    grid.n = 16;
    grid.p_min = -3.0;
    grid.dp = 6.0 / (grid.n - 1);
    const FokkerPlanckReport rep = fokker_planck_residual(model_gas(), grid, 0.0);
    for (double r : rep.residual) CHECK(r == 0.0);
}

TEST_CASE("velocity-domain fraction of an energy cutoff") {
    CHECK(std::abs(velocity_cutoff_fraction(3.0, 1.0, 1.0) - std::sqrt(8.0) / 3.0) <= 1e-10);
    CHECK(velocity_cutoff_fraction(3.0, 1.0, 1.0) == doctest::Approx(0.94281).epsilon(1e-5));
    CHECK(velocity_cutoff_fraction(1.0, 1.0, 1.0) == 0.0);
    CHECK(velocity_cutoff_fraction(kInf, 1.0, 1.0) == 1.0);
    CHECK(velocity_cutoff_fraction(1e9, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(velocity_cutoff_fraction(0.5, 1.0, 1.0), std::domain_error);
}

TEST_CASE("finite-domain Fourier series") {
    const double half = 2.0;
    const int m = 256;

    // pure cosine: only the +-1 coefficients survive, with value Delta
    std::vector<double> cosine(m);
    for (int j = 0; j < m; ++j) {
        const double x = -half + 2.0 * half * j / m;
        cosine[j] = std::cos(std::numbers::pi * x / half);
    }
    const auto coeffs = finite_fourier(cosine, half, 4);
    for (int n = -4; n <= 4; ++n) {
        const double expected = (n == 1 || n == -1) ? half : 0.0;
        CHECK(std::abs(coeffs[n + 4] - expected) <= 1e-10);
    }

    // band-limited signal reconstructs exactly
    std::vector<double> band(m);
    for (int j = 0; j < m; ++j) {
        const double x = -half + 2.0 * half * j / m;
        band[j] = 0.4 + std::sin(2.0 * std::numbers::pi * x / half) -
                  0.3 * std::cos(3.0 * std::numbers::pi * x / half);
    }
    const auto bc = finite_fourier(band, half, 8);
    for (int j = 0; j < m; j += 13) {
        const double x = -half + 2.0 * half * j / m;
        CHECK(std::abs(finite_fourier_reconstruct(bc, half, x) - band[j]) <= 1e-8);
    }

    // Parseval for a narrow Gaussian
    std::vector<double> gauss(1024);
    double direct = 0.0;
    for (int j = 0; j < 1024; ++j) {
        const double x = -half + 2.0 * half * j / 1024;
        gauss[j] = std::exp(-x * x / (2.0 * 0.25 * 0.25));
        direct += gauss[j] * gauss[j];
    }
    direct *= 2.0 * half / 1024;
    const auto gc = finite_fourier(gauss, half, 64);
    double parseval = 0.0;
    for (const auto& c : gc) parseval += std::norm(c);
    parseval /= 2.0 * half;
    CHECK(std::abs(parseval - direct) <= 1e-6 * direct);
}

TEST_CASE("sound velocity reaches c exactly at T = m0 c^2") {
    CHECK(sound_velocity(1.0, 1.0) == 1.0);
    CHECK(sound_velocity(2.0, 2.0) == 1.0);
    CHECK(sound_velocity(0.25, 1.0) == doctest::Approx(0.5));
}
