#pragma once

#include <stdexcept>
#include <utility>

#include "aegis/blueprint.hpp"
#include "aegis/payload.hpp"
#include "aegis/rng.hpp"

namespace aegis {

// Signalled when the drawn attack kind cannot apply to the chosen benign
// payload (e.g. manipulative_ui on a payload with no action components).
// The caller resamples and logs.
struct InapplicableAttack : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sampling weights per attack family; defaults follow the observed counts
// workflow 258 / phishing 232 / leakage 228 / manipulative 207 / layout 75.
struct AttackMix {
    double weights[kAttackKindCount] = {232, 228, 75, 207, 258};  // enum order

    static AttackMix defaults() { return {}; }
};

// Mutates a benign payload into a schema-valid malicious one, recording full
// provenance. Pure function of (payload, kind, rng stream).
std::pair<UIPayload, AttackTrace> mutate(const UIPayload& benign, AttackKind kind,
                                         Rng& rng, const Blueprints& bp,
                                         const std::string& mutant_id);

}  // namespace aegis
