#pragma once

#include <string>

#include "aegis/attacks.hpp"
#include "aegis/autoencoder.hpp"
#include "aegis/generator.hpp"
#include "aegis/isolation_forest.hpp"
#include "aegis/random_forest.hpp"

namespace aegis {

struct PipelineConfig {
    std::uint64_t seed = 1337;
    int n_benign = 3000;
    int n_malicious = 1000;
    GeneratorConfig generator;
    AttackMix attack_mix;
    IsolationForestConfig isolation_forest;
    AutoencoderConfig autoencoder;
    RandomForestConfig random_forest;
    double test_fraction = 0.2;
    std::string output_dir = "out";
    bool plots = true;
    std::string blueprint_path = "data/blueprints.json";
};

// Reads the YAML config file; missing keys keep their defaults. The AEGIS_OUT
// environment variable overrides the output root.
PipelineConfig load_pipeline_config(const std::string& yaml_path);
PipelineConfig default_pipeline_config();
std::string pipeline_config_to_yaml(const PipelineConfig& config);

// Stages; each reads only the previous stage's files under config.output_dir.
void stage_generate(const PipelineConfig& config);
void stage_validate(const PipelineConfig& config);
void stage_extract(const PipelineConfig& config);
void stage_train(const PipelineConfig& config);
void stage_evaluate(const PipelineConfig& config);
void stage_ablate(const PipelineConfig& config);
void stage_report(const PipelineConfig& config);

// generate -> validate -> extract -> train -> evaluate -> ablate -> report.
void run_pipeline(const PipelineConfig& config);

}  // namespace aegis
