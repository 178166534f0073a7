#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "relwave/csv.hpp"
#include "relwave/fft.hpp"
#include "relwave/numerics.hpp"

using namespace relwave;

namespace {

// reference DFT for validating the fast transform
std::vector<cdouble> dft_reference(const std::vector<cdouble>& x, bool inverse) {
    const std::size_t n = x.size();
    std::vector<cdouble> out(n);
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n; ++k) {
        cdouble acc{0, 0};
        for (std::size_t j = 0; j < n; ++j)
            acc += x[j] * std::polar(1.0, sign * 2.0 * std::numbers::pi * double(k * j) / double(n));
        out[k] = inverse ? acc / double(n) : acc;
    }
    return out;
}

}  // namespace

TEST_CASE("adaptive quadrature reproduces known integrals") {
    const double g = integrate_adaptive([](double x) { return std::exp(-x * x); }, -8.0, 8.0);
    CHECK(g == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));

    const double s = integrate_adaptive([](double x) { return std::sin(x); }, 0.0,
                                        std::numbers::pi);
    CHECK(s == doctest::Approx(2.0).epsilon(1e-12));

    CHECK(integrate_adaptive([](double x) { return x; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("adaptive quadrature reports nonconvergence with diagnostics") {
    // endpoint singularity with a tiny depth cap
    CHECK_THROWS_WITH_AS(
        integrate_adaptive([](double x) { return 1.0 / std::sqrt(std::abs(x) + 1e-300); },
                           0.0, 1.0, 1e-14, 1e-300, 3),
        doctest::Contains("no convergence"), std::runtime_error);
}

TEST_CASE("golden section finds the maximum of a unimodal function") {
    const double x = golden_section_max([](double t) { return -(t - 1.7) * (t - 1.7); },
                                        0.0, 5.0, 1e-10);
    CHECK(x == doctest::Approx(1.7).epsilon(1e-8));
}

TEST_CASE("least squares recovers an exact line and flags degeneracy") {
    std::vector<double> x{1, 2, 3, 4, 5}, y;
    for (double v : x) y.push_back(2.5 - 0.75 * v);
    const LineFit f = least_squares_line(x, y);
    CHECK(f.slope == doctest::Approx(-0.75).epsilon(1e-14));
    CHECK(f.intercept == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(f.rms_residual < 1e-14);

    std::vector<double> xs{3, 3, 3}, ys{1, 2, 3};
    CHECK_THROWS_AS(least_squares_line(xs, ys), std::domain_error);
}

TEST_CASE("fft matches the reference DFT and round-trips") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-1, 1);
    for (std::size_t n : {8u, 16u, 64u}) {
        std::vector<cdouble> x(n);
        for (auto& v : x) v = {unif(rng), unif(rng)};
        auto fast = x;
        fft_inplace(fast, false);
        const auto ref = dft_reference(x, false);
        for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(fast[k] - ref[k]) < 1e-12);
        fft_inplace(fast, true);
        for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(fast[k] - x[k]) < 1e-12);
    }
    std::vector<cdouble> bad(6);
    CHECK_THROWS_AS(fft_inplace(bad, false), std::invalid_argument);
}

TEST_CASE("centered transform matches a direct centered DFT") {
    const int n = 16;
    const double da = 0.37;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(-1, 1);
    std::vector<cdouble> g(n);
    for (auto& v : g) v = {unif(rng), unif(rng)};

    const double db = 2.0 * std::numbers::pi / (n * da);
    for (int sign : {-1, 1}) {
        const auto fast = centered_transform(g, da, sign, 0.5);
        for (int m = 0; m < n; ++m) {
            cdouble acc{0, 0};
            const double b = (m - n / 2) * db;
            for (int j = 0; j < n; ++j)
                acc += g[j] * std::polar(1.0, sign * (j - n / 2) * da * b);
            CHECK(std::abs(fast[m] - 0.5 * acc) < 1e-12);
        }
    }
}

TEST_CASE("csv round-trips doubles bit-exactly") {
    const auto dir = std::filesystem::temp_directory_path() / "relwave_csv_test";
    std::filesystem::create_directories(dir);
    CsvTable t;
    t.header = {"a", "b"};
    t.rows = {{0.1, -1.0 / 3.0}, {1e-308, 12345.678901234567}, {-0.0, 2e300}};
    const auto p = dir / "t.csv";
    write_csv(p, t);
    const CsvTable r = read_csv(p);
    REQUIRE(r.rows.size() == t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(r.rows[i][j] == t.rows[i][j]);
    CHECK(r.column("b") == 1);
    CHECK(r.column("missing") == -1);
}
