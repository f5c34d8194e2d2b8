// Command-line front end: simulate, sweep, roots, boundary, modes.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ringdelay/commands.hpp"

namespace {

constexpr const char* kOutEnv = "RINGDELAY_OUT";

struct Overrides {
    std::string config_path;
    std::optional<std::string> out;
    std::optional<double> tau1;
    std::optional<double> tau2;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::string> method;
};

void add_common(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config_path, "JSON configuration file (a metadata.json also works)");
    cmd->add_option("--out", o.out, "Output directory (overrides $RINGDELAY_OUT and the config)");
    cmd->add_option("--seed", o.seed, "Seed of the random initial history");
}

ringdelay::RunConfig resolve(const Overrides& o) {
    ringdelay::RunConfig cfg;
    if (!o.config_path.empty()) cfg = ringdelay::load_config(o.config_path);
    if (const char* env = std::getenv(kOutEnv); env && *env) cfg.out = env;
    if (o.out) cfg.out = *o.out;
    if (o.tau1) cfg.model.tau1 = *o.tau1;
    if (o.tau2) cfg.model.tau2 = *o.tau2;
    if (o.seed) cfg.seed = *o.seed;
    if (o.workers) cfg.workers = *o.workers;
    if (o.method) cfg.method = ringdelay::parse_method(*o.method);
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Delayed consensus on signed directed rings: simulation, characteristic roots, crossing curves"};
    app.require_subcommand(1);
    Overrides o;

    auto* simulate = app.add_subcommand("simulate", "Integrate one (tau1, tau2) pair and classify the run");
    add_common(simulate, o);
    simulate->add_option("--tau1", o.tau1, "Forward (cooperative) delay");
    simulate->add_option("--tau2", o.tau2, "Backward (antagonistic) delay");

    auto* sweep = app.add_subcommand("sweep", "Phase diagram over the (tau1, tau2) grid");
    add_common(sweep, o);
    sweep->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--method", o.method, "simulate | spectral | both")
        ->check(CLI::IsMember({"simulate", "spectral", "both"}));

    std::vector<int> modes;
    auto* roots = app.add_subcommand("roots", "Rightmost characteristic roots per mode");
    add_common(roots, o);
    roots->add_option("--tau1", o.tau1, "Forward delay");
    roots->add_option("--tau2", o.tau2, "Backward delay");
    roots->add_option("-k,--k", modes, "Mode indices (default: all)")->delimiter(',');

    bool envelope = false;
    auto* boundary = app.add_subcommand("boundary", "Stability crossing curves inside the sweep window");
    add_common(boundary, o);
    boundary->add_flag("--envelope", envelope, "Also write the crossing points that bound the stable region");

    std::optional<std::string> input;
    auto* modes_cmd = app.add_subcommand("modes", "Fourier mode amplitudes of a trajectory CSV or the initial state");
    add_common(modes_cmd, o);
    modes_cmd->add_option("--input", input, "trajectory.csv written by simulate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ringdelay::kExitOk : ringdelay::kExitUsage;
    }

    try {
        const ringdelay::RunConfig cfg = resolve(o);
        const std::filesystem::path out = cfg.out;
        if (simulate->parsed()) ringdelay::run_simulate(cfg, out, std::cout);
        if (sweep->parsed()) ringdelay::run_sweep(cfg, out, std::cout);
        if (roots->parsed()) return ringdelay::run_roots(cfg, modes, out, std::cout);
        if (boundary->parsed()) ringdelay::run_boundary(cfg, envelope, out, std::cout);
        if (modes_cmd->parsed()) {
            std::optional<std::filesystem::path> in;
            if (input) in = *input;
            ringdelay::run_modes(cfg, in, out, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ringdelay::exit_code_for(e);
    }
    return ringdelay::kExitOk;
}
