#pragma once
#include <filesystem>
#include <string>
#include <vector>

#include "relwave/csv.hpp"

namespace relwave {

enum class PlotKind { Line, Heatmap };

/// Renders a CSV series to a self-contained SVG file. Line plots take the
/// first column (or x_col) as abscissa and every other column as a series;
/// heatmaps take three columns (x, y, value). An overlay polyline (e.g. a
/// fitted curve) may be appended to line plots. Unknown column names raise
/// std::invalid_argument naming the available columns; empty tables raise
/// std::invalid_argument.
void emit_plot(const CsvTable& series, PlotKind kind, const std::filesystem::path& out_svg,
               const std::string& x_col = "", const std::vector<std::string>& y_cols = {},
               const std::vector<std::pair<double, double>>& overlay = {});

void emit_plot_file(const std::filesystem::path& series_csv, PlotKind kind,
                    const std::filesystem::path& out_svg);

}  // namespace relwave
