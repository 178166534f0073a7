#include "relwave/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace relwave {

namespace {

constexpr int kWidth = 720, kHeight = 480;
constexpr int kMarginL = 70, kMarginR = 20, kMarginT = 20, kMarginB = 50;

const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string available_columns(const CsvTable& t) {
    std::string s;
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (i) s += ", ";
        s += t.header[i];
    }
    return s;
}

int require_column(const CsvTable& t, const std::string& name) {
    const int c = t.column(name);
    if (c < 0)
        throw std::invalid_argument("emit_plot: unknown column '" + name +
                                    "'; available columns: " + available_columns(t));
    return c;
}

struct Range {
    double lo = 0, hi = 1;
    void expand(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void init(double v) { lo = hi = v; }
    double span() const { return hi > lo ? hi - lo : 1.0; }
};

std::string fmt_tick(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

void axes(std::ostream& out, const Range& xr, const Range& yr, const std::string& xlabel,
          const std::string& ylabel) {
    const int x0 = kMarginL, x1 = kWidth - kMarginR;
    const int y0 = kHeight - kMarginB, y1 = kMarginT;
    out << "<rect x='" << x0 << "' y='" << y1 << "' width='" << x1 - x0 << "' height='"
        << y0 - y1 << "' fill='none' stroke='black'/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = i / 4.0;
        const double xv = xr.lo + fx * xr.span();
        const double yv = yr.lo + fx * yr.span();
        const double px = x0 + fx * (x1 - x0);
        const double py = y0 - fx * (y0 - y1);
        out << "<text x='" << px << "' y='" << y0 + 18
            << "' font-size='11' text-anchor='middle'>" << fmt_tick(xv) << "</text>\n";
        out << "<text x='" << x0 - 6 << "' y='" << py + 4
            << "' font-size='11' text-anchor='end'>" << fmt_tick(yv) << "</text>\n";
    }
    out << "<text x='" << (x0 + x1) / 2 << "' y='" << kHeight - 10
        << "' font-size='13' text-anchor='middle'>" << xlabel << "</text>\n";
    out << "<text x='16' y='" << (y0 + y1) / 2
        << "' font-size='13' text-anchor='middle' transform='rotate(-90 16 "
        << (y0 + y1) / 2 << ")'>" << ylabel << "</text>\n";
}

double map_x(double v, const Range& r) {
    return kMarginL + (v - r.lo) / r.span() * (kWidth - kMarginL - kMarginR);
}
double map_y(double v, const Range& r) {
    return kHeight - kMarginB - (v - r.lo) / r.span() * (kHeight - kMarginT - kMarginB);
}

// simple blue-white-red ramp for signed data, dark-to-bright for positive
std::string heat_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const int r = static_cast<int>(255 * std::clamp(1.5 * t, 0.0, 1.0));
    const int g = static_cast<int>(255 * std::clamp(1.5 * t - 0.25, 0.0, 1.0) * 0.85);
    const int b = static_cast<int>(255 * std::clamp(2.0 - 2.0 * t, 0.0, 1.0) * 0.6 + 60 * (1 - t));
    return "rgb(" + std::to_string(r) + "," + std::to_string(g) + "," + std::to_string(b) + ")";
}

}  // namespace

void emit_plot(const CsvTable& series, PlotKind kind, const std::filesystem::path& out_svg,
               const std::string& x_col, const std::vector<std::string>& y_cols,
               const std::vector<std::pair<double, double>>& overlay) {
    if (series.rows.empty()) throw std::invalid_argument("emit_plot: empty series");
    if (series.header.size() < 2)
        throw std::invalid_argument("emit_plot: need at least two columns");

    std::ofstream out(out_svg);
    if (!out) throw std::runtime_error("emit_plot: cannot open " + out_svg.string());
    out << "<?xml version='1.0' encoding='UTF-8'?>\n"
        << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
        << kHeight << "'>\n<rect width='100%' height='100%' fill='white'/>\n";

    if (kind == PlotKind::Line) {
        const int xc = x_col.empty() ? 0 : require_column(series, x_col);
        std::vector<int> ycs;
        if (y_cols.empty()) {
            for (std::size_t i = 0; i < series.header.size(); ++i)
                if (static_cast<int>(i) != xc) ycs.push_back(static_cast<int>(i));
        } else {
            for (const auto& name : y_cols) ycs.push_back(require_column(series, name));
        }
        Range xr, yr;
        xr.init(series.rows[0][xc]);
        yr.init(series.rows[0][ycs[0]]);
        for (const auto& row : series.rows) {
            xr.expand(row[xc]);
            for (int yc : ycs) yr.expand(row[yc]);
        }
        for (const auto& [ox, oy] : overlay) {
            xr.expand(ox);
            yr.expand(oy);
        }
        std::string ylabel = series.header[ycs[0]];
        for (std::size_t s = 1; s < ycs.size(); ++s) ylabel += ", " + series.header[ycs[s]];
        axes(out, xr, yr, series.header[xc], ylabel);
        for (std::size_t s = 0; s < ycs.size(); ++s) {
            out << "<polyline fill='none' stroke='" << kSeriesColors[s % 5]
                << "' stroke-width='1.5' points='";
            for (const auto& row : series.rows)
                out << map_x(row[xc], xr) << ',' << map_y(row[ycs[s]], yr) << ' ';
            out << "'/>\n";
        }
        if (!overlay.empty()) {
            out << "<polyline fill='none' stroke='black' stroke-dasharray='5,4' "
                   "stroke-width='1.2' points='";
            for (const auto& [ox, oy] : overlay) out << map_x(ox, xr) << ',' << map_y(oy, yr) << ' ';
            out << "'/>\n";
        }
    } else {
        const int xc = x_col.empty() ? 0 : require_column(series, x_col);
        int yc = xc == 0 ? 1 : 0, vc = -1;
        if (!y_cols.empty()) {
            if (y_cols.size() != 2)
                throw std::invalid_argument("emit_plot: heatmap needs y and value columns");
            yc = require_column(series, y_cols[0]);
            vc = require_column(series, y_cols[1]);
        } else {
            for (std::size_t i = 0; i < series.header.size() && vc < 0; ++i)
                if (static_cast<int>(i) != xc && static_cast<int>(i) != yc)
                    vc = static_cast<int>(i);
            if (vc < 0) throw std::invalid_argument("emit_plot: heatmap needs three columns");
        }
        std::set<double> xs, ys;
        Range vr;
        vr.init(series.rows[0][vc]);
        for (const auto& row : series.rows) {
            xs.insert(row[xc]);
            ys.insert(row[yc]);
            vr.expand(row[vc]);
        }
        Range xr, yr;
        xr.init(*xs.begin());
        xr.expand(*xs.rbegin());
        yr.init(*ys.begin());
        yr.expand(*ys.rbegin());
        const double cw = std::max(1.0, (kWidth - kMarginL - kMarginR) / double(xs.size()));
        const double chh = std::max(1.0, (kHeight - kMarginT - kMarginB) / double(ys.size()));
        for (const auto& row : series.rows) {
            const double t = (row[vc] - vr.lo) / vr.span();
            out << "<rect x='" << map_x(row[xc], xr) - cw / 2 << "' y='"
                << map_y(row[yc], yr) - chh / 2 << "' width='" << cw << "' height='" << chh
                << "' fill='" << heat_color(t) << "'/>\n";
        }
        axes(out, xr, yr, series.header[xc], series.header[yc]);
    }
    out << "</svg>\n";
}

void emit_plot_file(const std::filesystem::path& series_csv, PlotKind kind,
                    const std::filesystem::path& out_svg) {
    emit_plot(read_csv(series_csv), kind, out_svg);
}

}  // namespace relwave
