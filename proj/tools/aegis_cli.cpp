#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "aegis/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitStageFailure = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synthetic UI-protocol dataset pipeline: generation, validation, "
                 "feature extraction, detector training and evaluation"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    app.add_option("--config", config_path, "YAML config file (defaults built in)")
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output root directory (overrides config)");
    app.add_option("--seed", seed, "Global seed (overrides config)");

    const char* stage_names[] = {"generate", "validate", "extract", "train",
                                 "evaluate", "ablate",   "report",  "all"};
    for (const char* name : stage_names) app.add_subcommand(name)->fallthrough();

    CLI11_PARSE(app, argc, argv);
    const std::string stage = app.get_subcommands().front()->get_name();

    aegis::PipelineConfig config;
    try {
        config = config_path ? aegis::load_pipeline_config(*config_path)
                             : aegis::default_pipeline_config();
        if (out_dir) config.output_dir = *out_dir;
        if (seed) config.seed = *seed;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        if (stage == "generate") aegis::stage_generate(config);
        else if (stage == "validate") aegis::stage_validate(config);
        else if (stage == "extract") aegis::stage_extract(config);
        else if (stage == "train") aegis::stage_train(config);
        else if (stage == "evaluate") aegis::stage_evaluate(config);
        else if (stage == "ablate") aegis::stage_ablate(config);
        else if (stage == "report") aegis::stage_report(config);
        else aegis::run_pipeline(config);
    } catch (const std::exception& e) {
        std::cerr << "stage '" << stage << "' failed: " << e.what() << "\n";
        return kExitStageFailure;
    }
    return kExitOk;
}
