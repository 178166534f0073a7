#include "relwave/resonance.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "relwave/csv.hpp"
#include "relwave/numerics.hpp"

namespace relwave {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

bool parse_positive(const std::string& s, double& out) {
    const std::string t = trim(s);
    const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    return res.ec == std::errc{} && res.ptr == t.data() + t.size() && out > 0.0;
}

}  // namespace

std::vector<ResonanceRecord> load_table(const std::filesystem::path& path, bool strict,
                                        std::vector<std::string>* row_errors) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_table: cannot open " + path.string());

    std::vector<std::string> errors;
    std::vector<ResonanceRecord> records;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        if (!header_seen) {
            const auto fields = split_fields(stripped);
            if (fields.size() != 4 || trim(fields[0]) != "name" || trim(fields[1]) != "class" ||
                trim(fields[2]) != "mass_mev" || trim(fields[3]) != "width_mev")
                throw std::runtime_error("load_table: line " + std::to_string(lineno) +
                                         ": header must be name,class,mass_mev,width_mev");
            header_seen = true;
            continue;
        }
        const auto fields = split_fields(line);
        auto bad = [&](const std::string& why) {
            errors.push_back("line " + std::to_string(lineno) + ": " + why);
        };
        if (fields.size() != 4) {
            bad("expected 4 columns, got " + std::to_string(fields.size()));
            continue;
        }
        ResonanceRecord rec;
        rec.name = trim(fields[0]);
        const std::string cls = trim(fields[1]);
        bool ok = true;
        if (rec.name.empty()) {
            bad("empty name");
            ok = false;
        }
        if (cls == "meson") {
            rec.cls = ParticleClass::Meson;
        } else if (cls == "baryon") {
            rec.cls = ParticleClass::Baryon;
        } else {
            bad("unknown class '" + cls + "' (expected meson or baryon)");
            ok = false;
        }
        if (!parse_positive(fields[2], rec.mass_mev)) {
            bad("mass_mev must be a positive number, got '" + trim(fields[2]) + "'");
            ok = false;
        }
        if (!parse_positive(fields[3], rec.width_mev)) {
            bad("width_mev must be a positive number, got '" + trim(fields[3]) + "'");
            ok = false;
        }
        if (ok) records.push_back(std::move(rec));
    }
    if (!header_seen) throw std::runtime_error("load_table: no records in " + path.string());

    if (!errors.empty() && strict) {
        std::string msg = "load_table: " + path.string() + " rejected:";
        for (const auto& e : errors) msg += "\n  " + e;
        throw std::runtime_error(msg);
    }
    if (row_errors) *row_errors = errors;
    if (records.empty() && errors.empty())
        throw std::runtime_error("load_table: no records in " + path.string());
    return records;
}

void save_table(const std::filesystem::path& path,
                std::span<const ResonanceRecord> records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_table: cannot open " + path.string());
    out << "name,class,mass_mev,width_mev\n";
    for (const auto& r : records)
        out << r.name << ',' << (r.cls == ParticleClass::Meson ? "meson" : "baryon") << ','
            << format_double(r.mass_mev) << ',' << format_double(r.width_mev) << '\n';
}

FitResult fit_inverse_width(std::span<const ResonanceRecord> records,
                            std::optional<ParticleClass> class_filter) {
    std::vector<double> x, y;
    for (const auto& r : records) {
        if (class_filter && r.cls != *class_filter) continue;
        x.push_back(1.0 / r.width_mev);
        y.push_back(r.ratio());
    }
    if (x.size() < 2)
        throw std::domain_error("fit_inverse_width: need at least 2 records after filtering");
    LineFit lf;
    try {
        lf = least_squares_line(x, y);
    } catch (const std::domain_error&) {
        throw std::domain_error("fit_inverse_width: degenerate design (all widths equal)");
    }
    FitResult fr;
    fr.a = lf.intercept;
    fr.c_mev = lf.slope;
    fr.rms_residual = lf.rms_residual;
    fr.n_points = lf.n;
    fr.se_a = lf.se_intercept;
    fr.se_c = lf.se_slope;
    return fr;
}

BoundReport lifetime_bound_check(std::span<const ResonanceRecord> records,
                                 double hbar_mev_s) {
    BoundReport rep;
    std::size_t ok = 0;
    for (const auto& r : records) {
        BoundEntry e;
        e.name = r.name;
        e.ratio = r.ratio();
        e.tau_s = hbar_mev_s / r.width_mev;
        e.bound_ok = e.ratio >= 2.0;
        if (e.bound_ok) ++ok;
        rep.entries.push_back(std::move(e));
    }
    if (!records.empty())
        rep.fraction_ok = static_cast<double>(ok) / static_cast<double>(records.size());
    return rep;
}

}  // namespace relwave
