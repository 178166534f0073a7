#pragma once
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace relwave {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

/// Minimal CSV table: one header row plus numeric data rows.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const;  // -1 if absent
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

/// FNV-1a 64-bit content hash (manifest fingerprints, not cryptographic).
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

}  // namespace relwave
