#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aegis/attacks.hpp"
#include "aegis/blueprint.hpp"
#include "aegis/payload.hpp"
#include "aegis/rng.hpp"
#include "aegis/validator.hpp"

namespace aegis {

struct GeneratorConfig {
    std::uint64_t seed = 1337;
    int component_count_min = 5;
    int component_count_max = 40;
    int depth_min = 1;
    int depth_max = 5;
    int session_length_min = 1;
    int session_length_max = 3;
    double binding_probability = 0.72;
    double domain_weights[kDomainCount] = {1, 1, 1, 1, 1};
    int max_retries = 8;
    double max_rejection_rate = 0.02;
};

struct GenerationLog {
    int benign_generated = 0;
    int malicious_generated = 0;
    int validation_rejections = 0;  // regenerated after a failed gate
    int attack_resamples = 0;       // inapplicable kind/source redraws
    double rejection_rate = 0.0;
    std::uint64_t seed = 0;
    int domain_counts[kDomainCount] = {0, 0, 0, 0, 0};
    int attack_counts[kAttackKindCount] = {0, 0, 0, 0, 0};
    std::vector<std::string> rejection_lines;  // one JSON line per rejected payload
};

struct Corpus {
    std::vector<UIPayload> benign;
    std::vector<UIPayload> malicious;
    GenerationLog log;
};

// Grows one benign payload from the domain blueprint by seeded stochastic
// tree growth. The result passes full validation; bounds violations trigger
// an internal error (callers regenerate on a retry stream).
UIPayload generate_benign(DomainKind domain, Rng& rng, const GeneratorConfig& config,
                          const Blueprints& bp, const SessionMeta& session,
                          const std::string& payload_id);

// Full corpus: exactly n_benign benign payloads across balanced domains, and
// n_malicious mutants of uniformly sampled benign sources under the attack
// mix. Deterministic in (config.seed, blueprint content).
Corpus generate_dataset(const GeneratorConfig& config, const Blueprints& bp,
                        int n_benign, int n_malicious,
                        const AttackMix& mix = AttackMix::defaults());

}  // namespace aegis
