#include "relwave/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "relwave/actionwave.hpp"
#include "relwave/csv.hpp"
#include "relwave/dynamics.hpp"
#include "relwave/relgas.hpp"
#include "relwave/resonance.hpp"
#include "relwave/svg.hpp"
#include "relwave/symmetry.hpp"
#include "relwave/wigner.hpp"

namespace relwave {

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
    std::string msg = "configuration invalid:";
    for (const auto& p : problems) msg += "\n  " + p;
    return msg;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> problems_)
    : std::runtime_error(join_problems(problems_)), problems(std::move(problems_)) {}

nlohmann::json default_config() {
    return nlohmann::json{
        {"units", {{"c", 1.0}, {"m0", 1.0}, {"sigma", 1.0}}},
        {"trajectory",
         {{"kind", "free"},
          {"spring", 0.01},
          {"q0", 0.0},
          {"q", {0.0, 0.0, 0.0}},
          {"p", {1.0, 0.0, 0.0}},
          {"du", 0.1},
          {"steps", 100}}},
        {"boost",
         {{"v", {0.6, 0.0, 0.0}},
          {"branch", "lorentz"},
          {"state", {{"q0", 0.0}, {"q", {0.0, 0.0, 0.0}}, {"p", {0.0, 0.0, 0.0}}}}}},
        {"wave",
         {{"grid",
           {{"n0", 256}, {"n1", 256}, {"q0_min", -3.0}, {"q0_max", 7.0}, {"q1_min", -3.0},
            {"q1_max", 4.0}}},
          {"blob", {{"center0", 0.0}, {"center1", -0.5}, {"width0", 0.35}, {"width1", 0.35}}},
          {"ds0", -1.0},
          {"ds1", 0.0},
          {"du", 0.01},
          {"steps", 200},
          {"sample_every", 10},
          {"boundary", "periodic"}}},
        {"wigner",
         {{"omega", 1.0},
          {"Q0", 0.0},
          {"P0", -1.0},
          {"x0", 0.0},
          {"width", 1.0},
          {"p_mean", 0.5},
          {"grid", {{"n", 256}, {"x_min", -16.0}, {"x_max", 16.0}}}}},
        {"gas", {{"mu", 0.0}, {"T", {0.5, 1.0, 1.5, 2.0}}, {"eps_max", "inf"}}},
        {"fit", {{"input", "data/resonances_sample.csv"}, {"class", "all"}}},
        {"hydrogen", {{"mean_p2", 1.0}, {"mean_p4", 5.0}, {"alpha", 0.0072973525693}}},
        {"output", {{"dir", "out"}, {"format", "csv"}, {"plot", false}}}};
}

namespace {

// -------- config access with problem collection --------

struct Validator {
    const nlohmann::json& cfg;
    std::vector<std::string> problems;

    const nlohmann::json* find(const std::string& section, const std::string& key) const {
        if (!cfg.contains(section) || !cfg[section].is_object()) return nullptr;
        if (!cfg[section].contains(key)) return nullptr;
        return &cfg[section][key];
    }

    double num(const std::string& section, const std::string& key, double fallback) {
        const auto* v = find(section, key);
        if (!v) return fallback;
        if (!v->is_number()) {
            problems.push_back(section + "." + key + ": expected a number");
            return fallback;
        }
        return v->get<double>();
    }

    int integer(const std::string& section, const std::string& key, int fallback) {
        const auto* v = find(section, key);
        if (!v) return fallback;
        if (!v->is_number_integer()) {
            problems.push_back(section + "." + key + ": expected an integer");
            return fallback;
        }
        return v->get<int>();
    }

    std::string str(const std::string& section, const std::string& key,
                    const std::string& fallback) {
        const auto* v = find(section, key);
        if (!v) return fallback;
        if (!v->is_string()) {
            problems.push_back(section + "." + key + ": expected a string");
            return fallback;
        }
        return v->get<std::string>();
    }

    Vec3 vec3(const std::string& section, const std::string& key, const Vec3& fallback) {
        const auto* v = find(section, key);
        if (!v) return fallback;
        if (!v->is_array() || v->size() != 3 || !(*v)[0].is_number() ||
            !(*v)[1].is_number() || !(*v)[2].is_number()) {
            problems.push_back(section + "." + key + ": expected an array of 3 numbers");
            return fallback;
        }
        return {(*v)[0].get<double>(), (*v)[1].get<double>(), (*v)[2].get<double>()};
    }

    void require(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }
};

struct UnitsBlock {
    double c = 1.0, m0 = 1.0, sigma = 1.0;
};

UnitsBlock read_units(Validator& v) {
    UnitsBlock u;
    u.c = v.num("units", "c", 1.0);
    u.m0 = v.num("units", "m0", 1.0);
    u.sigma = v.num("units", "sigma", 1.0);
    v.require(u.c > 0.0, "units.c: must be > 0");
    v.require(u.m0 > 0.0, "units.m0: must be > 0");
    v.require(u.sigma > 0.0, "units.sigma: must be > 0");
    return u;
}

// -------- artifact bookkeeping --------

struct ArtifactWriter {
    std::filesystem::path dir;
    Manifest manifest;

    void add(const std::string& name) {
        ArtifactEntry e;
        e.path = name;
        const auto full = dir / name;
        e.bytes = std::filesystem::file_size(full);
        std::ostringstream hex;
        hex << std::hex << fnv1a64_file(full);
        e.fnv1a64 = hex.str();
        manifest.artifacts.push_back(std::move(e));
    }

    void write_json(const std::string& name, const nlohmann::json& j) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + (dir / name).string());
        out << j.dump(2) << '\n';
        out.close();
        add(name);
    }

    void write_table(const std::string& name, const CsvTable& t) {
        write_csv(dir / name, t);
        add(name);
    }
};

std::vector<double> state_row(double tag, const ExtendedState& x) {
    return {tag, x.u, x.q0, x.q.x, x.q.y, x.q.z, x.p0, x.p.x, x.p.y, x.p.z};
}

// -------- trajectory --------

struct TrajectoryParams {
    UnitsBlock units;
    std::string kind;
    double spring = 0.0;
    ExtendedState x0;
    double du = 0.1;
    int steps = 100;
    nlohmann::json resolved;
};

TrajectoryParams parse_trajectory(Validator& v, const UnitsBlock& units) {
    TrajectoryParams p;
    p.units = units;
    p.kind = v.str("trajectory", "kind", "free");
    v.require(p.kind == "free" || p.kind == "harmonic",
              "trajectory.kind: must be 'free' or 'harmonic'");
    p.spring = v.num("trajectory", "spring", 0.01);
    if (p.kind == "harmonic") v.require(p.spring > 0.0, "trajectory.spring: must be > 0");
    p.x0.q0 = v.num("trajectory", "q0", 0.0);
    p.x0.q = v.vec3("trajectory", "q", {});
    p.x0.p = v.vec3("trajectory", "p", {1.0, 0.0, 0.0});
    const double on_shell_p0 =
        -std::sqrt(units.m0 * units.m0 * units.c * units.c + norm2(p.x0.p));
    p.x0.p0 = v.num("trajectory", "p0", on_shell_p0);
    v.require(p.x0.p0 < 0.0, "trajectory.p0: physical states need p0 < 0");
    v.require(p.x0.timelike_gap() > 0.0, "trajectory.p0/p: state must be timelike");
    p.du = v.num("trajectory", "du", 0.1);
    v.require(p.du > 0.0, "trajectory.du: must be > 0");
    p.steps = v.integer("trajectory", "steps", 100);
    v.require(p.steps >= 1, "trajectory.steps: must be >= 1");

    p.resolved = {{"kind", p.kind},
                  {"spring", p.spring},
                  {"q0", p.x0.q0},
                  {"q", {p.x0.q.x, p.x0.q.y, p.x0.q.z}},
                  {"p", {p.x0.p.x, p.x0.p.y, p.x0.p.z}},
                  {"p0", p.x0.p0},
                  {"du", p.du},
                  {"steps", p.steps}};
    return p;
}

void run_trajectory(const TrajectoryParams& p, const ScenarioOptions& opt, ArtifactWriter& w) {
    const HamiltonianSpec spec =
        p.kind == "free"
            ? HamiltonianSpec::free_relativistic(p.units.m0, p.units.c)
            : HamiltonianSpec::with_potential(
                  p.units.m0, p.units.c,
                  {[k = p.spring](const Vec3& q) { return 0.5 * k * norm2(q); },
                   [k = p.spring](const Vec3& q) { return k * q; }});
    const auto traj = integrate_trajectory(spec, p.x0, p.du, p.steps);
    write_trajectory_csv(w.dir / "trajectory.csv", traj);
    w.add("trajectory.csv");
    w.manifest.summary["rows"] = traj.size();
    w.manifest.summary["final_q0"] = traj.back().q0;
    if (opt.plot) {
        emit_plot(read_csv(w.dir / "trajectory.csv"), PlotKind::Line, w.dir / "trajectory.svg",
                  "u", {"q0", "q1"});
        w.add("trajectory.svg");
    }
}

// -------- boost --------

struct BoostParams {
    UnitsBlock units;
    Vec3 v{};
    EnergyBranch branch = EnergyBranch::Lorentz;
    ExtendedState state;
    nlohmann::json resolved;
};

BoostParams parse_boost(Validator& v, const UnitsBlock& units) {
    BoostParams p;
    p.units = units;
    p.v = v.vec3("boost", "v", {0.6, 0.0, 0.0});
    const std::string branch = v.str("boost", "branch", "lorentz");
    v.require(branch == "lorentz" || branch == "so4",
              "boost.branch: must be 'lorentz' or 'so4'");
    p.branch = branch == "so4" ? EnergyBranch::SO4 : EnergyBranch::Lorentz;
    if (p.branch == EnergyBranch::Lorentz)
        v.require(norm(p.v) < units.c, "boost.v: |V| must be < c on the Lorentz branch");

    nlohmann::json state_block = nlohmann::json::object();
    if (v.cfg.contains("boost") && v.cfg["boost"].is_object() &&
        v.cfg["boost"].contains("state"))
        state_block = v.cfg["boost"]["state"];
    const nlohmann::json wrapper = {{"state", state_block}};
    Validator sub{wrapper, {}};
    p.state.q0 = sub.num("state", "q0", 0.0);
    p.state.q = sub.vec3("state", "q", {});
    p.state.p = sub.vec3("state", "p", {});
    const double on_shell =
        -std::sqrt(units.m0 * units.m0 * units.c * units.c + norm2(p.state.p));
    p.state.p0 = sub.num("state", "p0", on_shell);
    for (auto& msg : sub.problems) v.problems.push_back("boost." + msg);

    p.resolved = {{"v", {p.v.x, p.v.y, p.v.z}},
                  {"branch", branch},
                  {"state",
                   {{"q0", p.state.q0},
                    {"q", {p.state.q.x, p.state.q.y, p.state.q.z}},
                    {"p", {p.state.p.x, p.state.p.y, p.state.p.z}},
                    {"p0", p.state.p0}}}};
    return p;
}

void run_boost(const BoostParams& p, const ScenarioOptions&, ArtifactWriter& w) {
    const ExtendedState out = boost_finite(p.state, p.v, p.units.c, p.branch);
    CsvTable t;
    t.header = {"row", "u", "q0", "q1", "q2", "q3", "p0", "p1", "p2", "p3"};
    t.rows.push_back(state_row(0, p.state));
    t.rows.push_back(state_row(1, out));
    w.write_table("boost.csv", t);

    const auto report = check_canonical(
        [&](const ExtendedState& s) { return boost_finite(s, p.v, p.units.c, p.branch); }, 4);
    w.manifest.summary["bracket_deviation"] = report.max_deviation;
    w.manifest.summary["invariant_gap_change"] = out.timelike_gap() - p.state.timelike_gap();
}

// -------- wave --------

struct WaveParams {
    UnitsBlock units;
    SpacetimeGrid grid;
    double center0 = 0, center1 = 0, width0 = 0.35, width1 = 0.35;
    double ds0 = -1.0, ds1 = 0.0;
    double du = 0.01;
    int steps = 200, sample_every = 10;
    BoundaryMode boundary = BoundaryMode::Periodic;
    nlohmann::json resolved;
};

WaveParams parse_wave(Validator& v, const UnitsBlock& units) {
    WaveParams p;
    p.units = units;
    const auto* grid = v.find("wave", "grid");
    const nlohmann::json g_wrapper = {
        {"grid", grid ? *grid : default_config()["wave"]["grid"]}};
    Validator gv{g_wrapper, {}};
    p.grid.n0 = gv.integer("grid", "n0", 256);
    p.grid.n1 = gv.integer("grid", "n1", 256);
    const double q0_min = gv.num("grid", "q0_min", -3.0);
    const double q0_max = gv.num("grid", "q0_max", 7.0);
    const double q1_min = gv.num("grid", "q1_min", -3.0);
    const double q1_max = gv.num("grid", "q1_max", 4.0);
    for (auto& msg : gv.problems) v.problems.push_back("wave." + msg);
    v.require(p.grid.n0 >= 8 && p.grid.n1 >= 8, "wave.grid: need at least 8 nodes per axis");
    v.require(q0_max > q0_min && q1_max > q1_min, "wave.grid: empty extents");
    if (p.grid.n0 >= 2 && p.grid.n1 >= 2 && q0_max > q0_min && q1_max > q1_min) {
        p.grid.q0_min = q0_min;
        p.grid.q1_min = q1_min;
        p.grid.d0 = (q0_max - q0_min) / (p.grid.n0 - 1);
        p.grid.d1 = (q1_max - q1_min) / (p.grid.n1 - 1);
    }

    const auto* blob = v.find("wave", "blob");
    const nlohmann::json b_wrapper = {
        {"blob", blob ? *blob : default_config()["wave"]["blob"]}};
    Validator bv{b_wrapper, {}};
    p.center0 = bv.num("blob", "center0", 0.0);
    p.center1 = bv.num("blob", "center1", -0.5);
    p.width0 = bv.num("blob", "width0", 0.35);
    p.width1 = bv.num("blob", "width1", 0.35);
    for (auto& msg : bv.problems) v.problems.push_back("wave." + msg);
    v.require(p.width0 > 0 && p.width1 > 0, "wave.blob: widths must be > 0");

    p.ds0 = v.num("wave", "ds0", -1.0);
    p.ds1 = v.num("wave", "ds1", 0.0);
    const double shell =
        p.ds0 * p.ds0 - p.ds1 * p.ds1 - units.m0 * units.m0 * units.c * units.c;
    v.require(std::abs(shell) <= 1e-6,
              "wave.ds0/ds1: plane-wave action must satisfy ds0^2 - ds1^2 = (m0 c)^2");
    v.require(p.ds0 < 0.0, "wave.ds0: physical states need ds0 = p0 < 0");

    p.du = v.num("wave", "du", 0.01);
    p.steps = v.integer("wave", "steps", 200);
    p.sample_every = v.integer("wave", "sample_every", 10);
    v.require(p.du > 0, "wave.du: must be > 0");
    v.require(p.steps >= 1, "wave.steps: must be >= 1");
    v.require(p.sample_every >= 1 && p.sample_every <= std::max(p.steps, 1),
              "wave.sample_every: must be in [1, steps]");
    const std::string boundary = v.str("wave", "boundary", "periodic");
    v.require(boundary == "periodic" || boundary == "reflecting",
              "wave.boundary: must be 'periodic' or 'reflecting'");
    p.boundary = boundary == "reflecting" ? BoundaryMode::Reflecting : BoundaryMode::Periodic;

    // CFL precheck so a bad du fails validation before anything is written
    if (p.grid.d0 > 0 && p.grid.d1 > 0 && p.du > 0) {
        const double cfl = p.du * std::max(std::abs(p.ds0), std::abs(p.ds1)) / units.m0;
        const double limit = 0.5 * std::min(p.grid.d0, p.grid.d1);
        v.require(cfl <= limit, "wave.du: CFL violation, du*max|dS|/m0 = " +
                                    format_double(cfl) + " > " + format_double(limit));
    }

    p.resolved = {{"grid",
                   {{"n0", p.grid.n0},
                    {"n1", p.grid.n1},
                    {"q0_min", q0_min},
                    {"q0_max", q0_max},
                    {"q1_min", q1_min},
                    {"q1_max", q1_max}}},
                  {"blob",
                   {{"center0", p.center0},
                    {"center1", p.center1},
                    {"width0", p.width0},
                    {"width1", p.width1}}},
                  {"ds0", p.ds0},
                  {"ds1", p.ds1},
                  {"du", p.du},
                  {"steps", p.steps},
                  {"sample_every", p.sample_every},
                  {"boundary", boundary}};
    return p;
}

void run_wave(const WaveParams& p, const ScenarioOptions& opt, ArtifactWriter& w) {
    ActionWaveState st =
        make_gaussian_blob(p.grid, p.center0, p.center1, p.width0, p.width1, p.ds0, p.ds1,
                           p.units.m0, p.units.c, p.boundary);
    write_field_csv(w.dir / "field_initial.csv", st);
    w.add("field_initial.csv");

    const double mass0 = total_mass(st);
    std::vector<std::pair<double, SpacetimeMoments>> series;
    series.emplace_back(st.u, spacetime_moments(st));
    for (int done = 0; done < p.steps; done += p.sample_every) {
        const int chunk = std::min(p.sample_every, p.steps - done);
        st = evolve(st, p.du, chunk);
        series.emplace_back(st.u, spacetime_moments(st));
    }
    write_field_csv(w.dir / "field_final.csv", st);
    w.add("field_final.csv");
    write_moments_csv(w.dir / "moments.csv", series);
    w.add("moments.csv");

    std::vector<std::pair<double, double>> ut;
    for (const auto& [u, m] : series) ut.emplace_back(u, m.mean_t);
    const LineFit fit = linear_time_slope(ut);
    w.manifest.summary = {{"slope", fit.slope},
                          {"intercept", fit.intercept},
                          {"rms_residual", fit.rms_residual},
                          {"mean_E", series.front().second.mean_e},
                          {"mass_drift_rel", std::abs(total_mass(st) - mass0) / mass0}};
    w.write_json("summary.json", w.manifest.summary);
    if (opt.plot) {
        emit_plot(read_csv(w.dir / "moments.csv"), PlotKind::Line, w.dir / "moments.svg", "u",
                  {"mean_t"});
        w.add("moments.svg");
    }
}

// -------- wigner --------

struct WignerParams {
    UnitsBlock units;
    double omega = 1.0, q0c = 0.0, p0m = -1.0;
    double x0 = 0.0, width = 1.0, p_mean = 0.5;
    SpatialGrid grid{256, -16.0, 32.0 / 256};
    nlohmann::json resolved;
};

WignerParams parse_wigner(Validator& v, const UnitsBlock& units) {
    WignerParams p;
    p.units = units;
    p.omega = v.num("wigner", "omega", 1.0);
    p.q0c = v.num("wigner", "Q0", 0.0);
    p.p0m = v.num("wigner", "P0", -1.0);
    p.x0 = v.num("wigner", "x0", 0.0);
    p.width = v.num("wigner", "width", 1.0);
    p.p_mean = v.num("wigner", "p_mean", 0.5);
    v.require(p.omega > 0, "wigner.omega: must be > 0");
    v.require(p.width > 0, "wigner.width: must be > 0");
    v.require(p.p0m < 0, "wigner.P0: physical packets need P0 < 0");

    const auto* grid = v.find("wigner", "grid");
    const nlohmann::json g_wrapper = {
        {"grid", grid ? *grid : default_config()["wigner"]["grid"]}};
    Validator gv{g_wrapper, {}};
    const int n = gv.integer("grid", "n", 256);
    const double x_min = gv.num("grid", "x_min", -16.0);
    const double x_max = gv.num("grid", "x_max", 16.0);
    for (auto& msg : gv.problems) v.problems.push_back("wigner." + msg);
    v.require(n >= 16 && is_power_of_two(static_cast<std::size_t>(std::max(n, 1))),
              "wigner.grid.n: must be a power of two >= 16");
    v.require(x_max > x_min, "wigner.grid: empty extent");
    if (n >= 2 && x_max > x_min) p.grid = {n, x_min, (x_max - x_min) / n};

    p.resolved = {{"omega", p.omega},   {"Q0", p.q0c},
                  {"P0", p.p0m},        {"x0", p.x0},
                  {"width", p.width},   {"p_mean", p.p_mean},
                  {"grid", {{"n", n}, {"x_min", x_min}, {"x_max", x_max}}}};
    return p;
}

void run_wigner(const WignerParams& p, const ScenarioOptions& opt, ArtifactWriter& w) {
    const GlauberPacket chi(p.q0c, p.p0m, p.omega, p.units.sigma, p.units.c);
    const WavePacket wp =
        make_gaussian_wavepacket(chi, p.grid, p.x0, p.width, p.p_mean, p.units.m0);
    const WignerField field = wigner_transform_spatial(wp);
    write_wigner_csv(w.dir / "wigner.csv", field);
    w.add("wigner.csv");

    const UncertaintyReport unc = uncertainty_products(wp);
    w.manifest.summary = {{"delta_t", unc.delta_t},
                          {"delta_E", unc.delta_e},
                          {"uncertainty_product", unc.product},
                          {"max_imag_residue", field.max_imag_residue}};
    if (opt.plot) {
        emit_plot(read_csv(w.dir / "wigner.csv"), PlotKind::Heatmap, w.dir / "wigner.svg");
        w.add("wigner.svg");
    }
}

// -------- gas --------

struct GasScenarioParams {
    UnitsBlock units;
    double mu = 0.0;
    std::vector<double> temps;
    double eps_max = std::numeric_limits<double>::infinity();
    nlohmann::json resolved;
};

GasScenarioParams parse_gas(Validator& v, const UnitsBlock& units) {
    GasScenarioParams p;
    p.units = units;
    p.mu = v.num("gas", "mu", 0.0);
    const auto* temps = v.find("gas", "T");
    if (!temps) {
        p.temps = {0.5, 1.0, 1.5, 2.0};
    } else if (temps->is_number()) {
        p.temps = {temps->get<double>()};
    } else if (temps->is_array()) {
        for (const auto& t : *temps) {
            if (!t.is_number()) {
                v.problems.push_back("gas.T: expected numbers");
                break;
            }
            p.temps.push_back(t.get<double>());
        }
    } else {
        v.problems.push_back("gas.T: expected a number or array");
    }
    for (double t : p.temps) v.require(t > 0.0, "gas.T: temperatures must be > 0");
    v.require(!p.temps.empty(), "gas.T: empty sweep");

    const auto* em = v.find("gas", "eps_max");
    if (em) {
        if (em->is_string() && em->get<std::string>() == "inf") {
            p.eps_max = std::numeric_limits<double>::infinity();
        } else if (em->is_number()) {
            p.eps_max = em->get<double>();
            v.require(p.eps_max >= units.m0 * units.c * units.c,
                      "gas.eps_max: below the rest energy");
        } else {
            v.problems.push_back("gas.eps_max: expected a number or 'inf'");
        }
    }

    p.resolved = {{"mu", p.mu},
                  {"T", p.temps},
                  {"eps_max", std::isinf(p.eps_max) ? nlohmann::json("inf")
                                                    : nlohmann::json(p.eps_max)}};
    return p;
}

void run_gas(const GasScenarioParams& p, const ScenarioOptions& opt, ArtifactWriter& w) {
    CsvTable t;
    t.header = {"T", "mu", "N", "E", "eps_star"};
    for (double temp : p.temps) {
        const GasParams g(p.mu, temp, p.units.m0, p.units.c, 1.0, 1.0);
        const ThermoIntegrals ti = thermo_integrals(g, p.eps_max);
        const double star = gt_argmax(temp, p.units.m0, p.units.c);
        t.rows.push_back({temp, p.mu, ti.n_particles, ti.energy, star});
    }
    w.write_table("gas.csv", t);
    w.manifest.summary["points"] = t.rows.size();
    if (opt.plot) {
        emit_plot(t, PlotKind::Line, w.dir / "gas.svg", "T", {"E"});
        w.add("gas.svg");
    }
}

// -------- fit --------

struct FitParams {
    std::filesystem::path input;
    std::optional<ParticleClass> cls;
    nlohmann::json resolved;
};

FitParams parse_fit(Validator& v) {
    FitParams p;
    const std::string input = v.str("fit", "input", "data/resonances_sample.csv");
    p.input = input;
    v.require(std::filesystem::exists(p.input), "fit.input: file not found: " + input);
    const std::string cls = v.str("fit", "class", "all");
    if (cls == "meson")
        p.cls = ParticleClass::Meson;
    else if (cls == "baryon")
        p.cls = ParticleClass::Baryon;
    else
        v.require(cls == "all", "fit.class: must be meson, baryon or all");
    p.resolved = {{"input", input}, {"class", cls}};
    return p;
}

void run_fit(const FitParams& p, const ScenarioOptions& opt, ArtifactWriter& w) {
    const auto records = load_table(p.input, opt.strict);
    std::vector<ResonanceRecord> selected;
    for (const auto& r : records)
        if (!p.cls || r.cls == *p.cls) selected.push_back(r);

    const FitResult fit = fit_inverse_width(selected);
    const BoundReport bounds = lifetime_bound_check(selected);

    // report.csv carries per-record names, so it is written directly
    {
        std::ofstream out(w.dir / "report.csv", std::ios::binary);
        if (!out) throw std::runtime_error("cannot open report.csv");
        out << "name,ratio,bound_ok\n";
        for (const auto& e : bounds.entries)
            out << e.name << ',' << format_double(e.ratio) << ',' << (e.bound_ok ? 1 : 0)
                << '\n';
    }
    w.add("report.csv");

    w.write_json("fit.json", {{"a", fit.a},
                              {"C", fit.c_mev},
                              {"rms", fit.rms_residual},
                              {"n", fit.n_points}});
    w.manifest.summary = {{"a", fit.a},
                          {"C", fit.c_mev},
                          {"rms", fit.rms_residual},
                          {"n", fit.n_points}};
    if (opt.plot) {
        CsvTable pts;
        pts.header = {"width_mev", "ratio"};
        for (const auto& r : selected) pts.rows.push_back({r.width_mev, r.ratio()});
        std::sort(pts.rows.begin(), pts.rows.end());
        std::vector<std::pair<double, double>> overlay;
        const double lo = pts.rows.front()[0], hi = pts.rows.back()[0];
        for (int i = 0; i <= 200; ++i) {
            const double width = lo + (hi - lo) * i / 200.0;
            overlay.emplace_back(width, fit.a + fit.c_mev / width);
        }
        emit_plot(pts, PlotKind::Line, w.dir / "fit.svg", "width_mev", {"ratio"}, overlay);
        w.add("fit.svg");
    }
}

// -------- hydrogen --------

struct HydrogenParams {
    double mean_p2 = 1.0, mean_p4 = 5.0, alpha = 0.0072973525693;
    nlohmann::json resolved;
};

HydrogenParams parse_hydrogen(Validator& v) {
    HydrogenParams p;
    p.mean_p2 = v.num("hydrogen", "mean_p2", 1.0);
    p.mean_p4 = v.num("hydrogen", "mean_p4", 5.0);
    p.alpha = v.num("hydrogen", "alpha", 0.0072973525693);
    v.require(p.mean_p2 >= 0, "hydrogen.mean_p2: must be >= 0");
    v.require(p.mean_p4 >= 0, "hydrogen.mean_p4: must be >= 0");
    v.require(p.alpha > 0, "hydrogen.alpha: must be > 0");
    p.resolved = {{"mean_p2", p.mean_p2}, {"mean_p4", p.mean_p4}, {"alpha", p.alpha}};
    return p;
}

void run_hydrogen(const HydrogenParams& p, const ScenarioOptions& opt, ArtifactWriter& w) {
    const HydrogenCorrections h = hydrogen_corrections(p.mean_p2, p.mean_p4, p.alpha);
    w.manifest.summary = {{"H_c", h.h_c}, {"H1", h.h1}, {"dirac_ref", h.dirac_ref}};
    if (opt.format == "json") {
        w.write_json("hydrogen.json", {{"H_c", h.h_c},
                                       {"H1", h.h1},
                                       {"dirac_ref", h.dirac_ref},
                                       {"alpha", p.alpha}});
    } else {
        CsvTable t;
        t.header = {"mean_p2", "mean_p4", "alpha", "H_c", "H1", "dirac_ref"};
        t.rows.push_back({p.mean_p2, p.mean_p4, p.alpha, h.h_c, h.h1, h.dirac_ref});
        w.write_table("hydrogen.csv", t);
    }
}

}  // namespace

nlohmann::json Manifest::to_json() const {
    nlohmann::json arts = nlohmann::json::array();
    for (const auto& a : artifacts)
        arts.push_back({{"path", a.path}, {"bytes", a.bytes}, {"fnv1a64", a.fnv1a64}});
    return {{"command", command},
            {"config", resolved_config},
            {"artifacts", arts},
            {"summary", summary}};
}

Manifest run_scenario(const std::string& command, const nlohmann::json& config,
                      const ScenarioOptions& options) {
    Validator v{config, {}};
    if (options.format != "csv" && options.format != "json")
        v.problems.push_back("output.format: must be 'csv' or 'json'");

    // parse and validate everything before touching the filesystem
    const UnitsBlock units = read_units(v);
    TrajectoryParams traj_p;
    BoostParams boost_p;
    WaveParams wave_p;
    WignerParams wig_p;
    GasScenarioParams gas_p;
    FitParams fit_p;
    HydrogenParams hyd_p;
    nlohmann::json resolved;
    resolved["units"] = {{"c", units.c}, {"m0", units.m0}, {"sigma", units.sigma}};

    if (command == "trajectory") {
        traj_p = parse_trajectory(v, units);
        resolved["trajectory"] = traj_p.resolved;
    } else if (command == "boost") {
        boost_p = parse_boost(v, units);
        resolved["boost"] = boost_p.resolved;
    } else if (command == "wave") {
        wave_p = parse_wave(v, units);
        resolved["wave"] = wave_p.resolved;
    } else if (command == "wigner") {
        wig_p = parse_wigner(v, units);
        resolved["wigner"] = wig_p.resolved;
    } else if (command == "gas") {
        gas_p = parse_gas(v, units);
        resolved["gas"] = gas_p.resolved;
    } else if (command == "fit") {
        fit_p = parse_fit(v);
        resolved["fit"] = fit_p.resolved;
    } else if (command == "hydrogen") {
        hyd_p = parse_hydrogen(v);
        resolved["hydrogen"] = hyd_p.resolved;
    } else {
        v.problems.push_back("unknown command '" + command + "'");
    }
    if (!v.problems.empty()) throw ValidationError(std::move(v.problems));

    std::filesystem::create_directories(options.out_dir);
    ArtifactWriter writer;
    writer.dir = options.out_dir;
    writer.manifest.command = command;
    resolved["output"] = {{"dir", options.out_dir.string()},
                          {"format", options.format},
                          {"plot", options.plot}};
    writer.manifest.resolved_config = resolved;

    if (command == "trajectory") run_trajectory(traj_p, options, writer);
    else if (command == "boost") run_boost(boost_p, options, writer);
    else if (command == "wave") run_wave(wave_p, options, writer);
    else if (command == "wigner") run_wigner(wig_p, options, writer);
    else if (command == "gas") run_gas(gas_p, options, writer);
    else if (command == "fit") run_fit(fit_p, options, writer);
    else if (command == "hydrogen") run_hydrogen(hyd_p, options, writer);

    std::ofstream mout(options.out_dir / "manifest.json", std::ios::binary);
    if (!mout) throw std::runtime_error("cannot write manifest.json");
    mout << writer.manifest.to_json().dump(2) << '\n';
    return writer.manifest;
}

}  // namespace relwave
