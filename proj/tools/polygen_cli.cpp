#include <iostream>

#include <CLI11.hpp>

#include "polygen/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"polygen: generative design of polygonal structures"};
    app.require_subcommand(1);

    std::string config;
    polygen::Overrides ov;
    std::uint64_t seed = 0;
    std::string out;
    std::size_t epochs = 0;
    std::size_t count = 50;
    std::string input;

    auto common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config, "experiment configuration (JSON)")->required()->check(CLI::ExistingFile);
        cmd->add_option("--seed", seed, "override design.seed");
        cmd->add_option("--out", out, "output path for JSON-lines records");
    };

    auto* run = app.add_subcommand("run", "run the design loop");
    common(run);
    run->add_option("--epochs", epochs, "override design.max_epochs")->check(CLI::PositiveNumber);
    run->add_flag("--wall-time", ov.record_wall_time, "include wall time in the summary record");

    auto* sample = app.add_subcommand("sample", "draw structures with the standard sampler");
    common(sample);
    sample->add_option("--count", count, "number of structures")->check(CLI::NonNegativeNumber);

    auto* study = app.add_subcommand("scaling-study", "reference reconstruction sweep");
    common(study);
    study->add_option("--epochs", epochs, "override generations per run")->check(CLI::PositiveNumber);

    auto* check = app.add_subcommand("validate", "validate structure records against the domain");
    common(check);
    check->add_option("--input", input, "JSON-lines file with structure records")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : polygen::kExitConfig;
    }

    for (CLI::App* cmd : app.get_subcommands()) {
        if (cmd->count("--seed")) ov.seed = seed;
        if (cmd->count("--out")) ov.out = out;
        if (cmd->get_option_no_throw("--epochs") && cmd->count("--epochs")) ov.epochs = epochs;
    }

    if (*run) return polygen::cmd_run(config, ov, std::cerr);
    if (*sample) return polygen::cmd_sample(config, count, ov, std::cerr);
    if (*study) return polygen::cmd_scaling_study(config, ov, std::cerr);
    return polygen::cmd_validate(config, input, ov, std::cerr);
}
