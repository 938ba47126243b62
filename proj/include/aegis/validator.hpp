#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aegis/payload.hpp"

namespace aegis {

enum class ValidationStage { schema, logical };

// Closed set of violation codes so tests can assert on codes, not messages.
namespace violation {
inline constexpr const char* DUPLICATE_ID = "DUPLICATE_ID";
inline constexpr const char* NO_ROOT = "NO_ROOT";
inline constexpr const char* MULTIPLE_ROOTS = "MULTIPLE_ROOTS";
inline constexpr const char* PARENT_UNRESOLVED = "PARENT_UNRESOLVED";
inline constexpr const char* PARENT_NOT_CONTAINER = "PARENT_NOT_CONTAINER";
inline constexpr const char* NOT_A_TREE = "NOT_A_TREE";
inline constexpr const char* BINDING_UNRESOLVED = "BINDING_UNRESOLVED";
inline constexpr const char* BINDING_BAD_ROLE = "BINDING_BAD_ROLE";
inline constexpr const char* ACTION_ROLE_MISMATCH = "ACTION_ROLE_MISMATCH";
inline constexpr const char* LABEL_TRACE_MISMATCH = "LABEL_TRACE_MISMATCH";
inline constexpr const char* DEPTH_OUT_OF_BOUNDS = "DEPTH_OUT_OF_BOUNDS";
inline constexpr const char* TABLE_MISSING_ROW_COUNT = "TABLE_MISSING_ROW_COUNT";
inline constexpr const char* FORM_WITHOUT_INPUT = "FORM_WITHOUT_INPUT";
}  // namespace violation

struct Violation {
    std::string code;
    std::optional<std::string> component_id;
    std::string message;
};

struct ValidationReport {
    bool passed = true;
    ValidationStage stage = ValidationStage::schema;
    std::vector<Violation> violations;

    bool has(const std::string& code) const {
        for (const auto& v : violations)
            if (v.code == code) return true;
        return false;
    }
};

struct ValidationBounds {
    int depth_min = 1;
    int benign_depth_max = 5;
    // Relaxed bound for malicious payloads: layout-abuse mutants may nest well
    // past the benign cap, but absurd structures still fail.
    int malicious_depth_max = 14;
};

enum class PayloadLabel { benign, malicious };

// Two-stage gate: schema (structure/types/IDs), then logical (bounds and
// cross-component relationships). Logical checks only run when the schema
// stage passes. Failures are reported, never thrown.
ValidationReport validate(const UIPayload& payload, PayloadLabel label,
                          const ValidationBounds& bounds = {});

// Depth of the deepest component; the root has depth 1. Returns 0 for an
// empty component list.
int max_depth(const UIPayload& payload);

}  // namespace aegis
