#pragma once
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace relwave {

enum class ParticleClass { Meson, Baryon };

struct ResonanceRecord {
    std::string name;
    ParticleClass cls = ParticleClass::Meson;
    double mass_mev = 0.0;   // m0 c^2 [MeV]
    double width_mev = 0.0;  // Gamma [MeV]

    double ratio() const { return mass_mev / width_mev; }
};

/// Reads a resonance table: CSV with header name,class,mass_mev,width_mev,
/// class in {meson, baryon}, both numbers strictly positive. Lines starting
/// with '#' are comments. Malformed rows are reported with line numbers; in
/// strict mode any bad row rejects the whole file, otherwise bad rows are
/// skipped and collected into row_errors.
std::vector<ResonanceRecord> load_table(const std::filesystem::path& path,
                                        bool strict = true,
                                        std::vector<std::string>* row_errors = nullptr);

void save_table(const std::filesystem::path& path,
                std::span<const ResonanceRecord> records);

struct FitResult {
    double a = 0.0;             // dimensionless intercept
    double c_mev = 0.0;         // slope against 1/Gamma [MeV]
    double rms_residual = 0.0;  // dimensionless
    int n_points = 0;
    double se_a = 0.0;
    double se_c = 0.0;
};

/// Ordinary least squares of the ratio m0 c^2/Gamma against 1/Gamma,
/// i.e. the interpolation ratio = a + C/Gamma. Needs >= 2 records with
/// distinct widths.
FitResult fit_inverse_width(std::span<const ResonanceRecord> records,
                            std::optional<ParticleClass> class_filter = std::nullopt);

struct BoundEntry {
    std::string name;
    double ratio = 0.0;   // m0 c^2 / Gamma
    double tau_s = 0.0;   // lifetime hbar/Gamma [s]
    bool bound_ok = false;  // ratio >= 2, i.e. tau_L >= 2 hbar/m0 c^2
};

struct BoundReport {
    std::vector<BoundEntry> entries;
    std::optional<double> fraction_ok;  // empty input -> no fraction
};

inline constexpr double kHbarMevSeconds = 6.582119569e-22;

BoundReport lifetime_bound_check(std::span<const ResonanceRecord> records,
                                 double hbar_mev_s = kHbarMevSeconds);

}  // namespace relwave
