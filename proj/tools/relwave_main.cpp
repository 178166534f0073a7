// Command-line front end: scenario runners for trajectories, boosts,
// action-wave evolution, Wigner fields, the relativistic gas, resonance
// fits and the hydrogen corrections, plus a `verify` battery.
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "relwave/scenario.hpp"
#include "relwave/verify.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

nlohmann::json load_config(const std::string& path) {
    if (path.empty()) return relwave::default_config();
    std::ifstream in(path);
    if (!in) throw relwave::ValidationError({"cannot open config file: " + path});
    nlohmann::json cfg;
    try {
        in >> cfg;
    } catch (const nlohmann::json::parse_error& e) {
        throw relwave::ValidationError({std::string("config parse error: ") + e.what()});
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relwave: extended phase-space relativistic dynamics toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::string format = "csv";
    bool plot = false;
    bool strict = false;
    bool timing = false;
    app.add_option("--config", config_path, "JSON configuration file (defaults built in)");
    app.add_option("--out-dir", out_dir, "output directory");
    app.add_option("--format", format, "report format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--plot", plot, "emit SVG plots next to the CSV artifacts");
    app.add_flag("--strict", strict, "reject input tables containing any malformed row");

    for (const char* name : {"trajectory", "boost", "wave", "wigner", "gas", "fit", "hydrogen"})
        app.add_subcommand(name)->fallthrough();
    CLI::App* verify = app.add_subcommand("verify", "run the full verification battery");
    verify->fallthrough();
    verify->add_flag("--timing", timing, "append per-criterion wall times (non-deterministic)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (command == "verify") {
            const auto results = relwave::run_acceptance_criteria();
            relwave::print_acceptance_table(std::cout, results, timing);
            std::size_t passed = 0;
            for (const auto& r : results) passed += r.pass ? 1 : 0;
            std::cout << "verify: " << passed << "/" << results.size() << " criteria passed\n";
            return passed == results.size() ? 0 : kExitNumerical;
        }
        relwave::ScenarioOptions options;
        options.out_dir = out_dir;
        options.format = format;
        options.plot = plot;
        options.strict = strict;
        const relwave::Manifest manifest =
            relwave::run_scenario(command, load_config(config_path), options);
        std::cout << manifest.to_json()["summary"].dump(2) << '\n';
        std::cout << command << ": wrote " << manifest.artifacts.size()
                  << " artifact(s) to " << out_dir << '\n';
        return 0;
    } catch (const relwave::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}
