// wavelab: scenario runner for the characteristic wave-system laboratory.
//
// Subcommands: solve, extinction, decay-sweep, smoothing, verify,
// mollify-study. Each reads a key=value scenario file and writes CSV
// reports (plus optional gnuplot scripts) into the output directory.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wavelab/errors.hpp"
#include "wavelab/scenario.hpp"

namespace {

struct SubArgs {
    std::string config;
    std::string out;
};

void add_subcommand(CLI::App& app, wavelab::scenario::Command cmd, const char* help,
                    std::vector<std::pair<wavelab::scenario::Command, SubArgs>>& requested) {
    using wavelab::scenario::command_name;
    CLI::App* sub = app.add_subcommand(command_name(cmd), help);
    auto args = std::make_shared<SubArgs>();
    sub->add_option("--config", args->config, "scenario file")->required();
    sub->add_option("--out", args->out, "output directory (overrides output.dir and $WAVELAB_OUT)");
    sub->callback([cmd, args, &requested]() { requested.emplace_back(cmd, *args); });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for a superstable 1-D wave system"};
    app.require_subcommand(1);

    std::vector<std::pair<wavelab::scenario::Command, SubArgs>> requested;
    using Cmd = wavelab::scenario::Command;
    add_subcommand(app, Cmd::Solve, "march the system and write per-step norms", requested);
    add_subcommand(app, Cmd::Extinction, "locate the extinction time of a run", requested);
    add_subcommand(app, Cmd::DecaySweep, "fit decay rates across a perturbation sweep",
                   requested);
    add_subcommand(app, Cmd::Smoothing, "discrete C2 norms under grid refinement", requested);
    add_subcommand(app, Cmd::Verify, "cross-check the solver against the integral-equation oracle",
                   requested);
    add_subcommand(app, Cmd::MollifyStudy, "Cauchy property of mollified-data solutions",
                   requested);

    CLI11_PARSE(app, argc, argv);

    const auto& [cmd, args] = requested.front();
    try {
        const auto config = wavelab::scenario::parse_config_file(args.config, cmd);
        const std::string out_dir = wavelab::scenario::resolve_out_dir(args.out, config);
        wavelab::scenario::run_command(config, out_dir, std::cout);
    } catch (const wavelab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const wavelab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
