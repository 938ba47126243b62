#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "aegis/payload.hpp"

namespace aegis {

inline constexpr int kFeatureCount = 18;

// Fixed column order of the 18-dimensional feature vector.
inline constexpr std::array<const char*, kFeatureCount> kFeatureNames = {
    "component_count",
    "unique_component_types",
    "max_depth",
    "avg_branching_factor",
    "graph_density",
    "payload_size_bytes",
    "container_ratio",
    "action_component_ratio",
    "avg_label_length",
    "text_entropy",
    "sensitive_keyword_count",
    "semantic_inconsistency_score",
    "numeric_property_statistics",
    "number_of_bindings",
    "sensitive_binding_flag",
    "cross_component_binding_ratio",
    "timestamp_variance",
    "inter_payload_interval",
};

// Feature-group column index sets (session features stay out of the ablation
// subsets).
inline constexpr std::array<int, 8> kStructuralColumns = {0, 1, 2, 3, 4, 5, 6, 7};
inline constexpr std::array<int, 5> kSemanticColumns = {8, 9, 10, 11, 12};
inline constexpr std::array<int, 3> kBindingColumns = {13, 14, 15};
inline constexpr std::array<int, 2> kSessionColumns = {16, 17};

// Matching is case-insensitive substring over lowercase-normalized text.
struct KeywordLists {
    std::vector<std::string> sensitive_keywords = {"password", "credit card", "ssn",
                                                   "token", "secret"};
    std::vector<std::string> sensitive_binding_keywords = {"ssn", "payment", "secret"};
    std::vector<std::string> risky_actions = {"delete_account", "authorize_transfer",
                                              "grant_admin_access", "wipe_data",
                                              "submit_credentials"};
    std::vector<std::string> risky_label_stems = {"delete", "remove", "wipe",
                                                  "transfer", "authorize", "grant"};
};

struct FeatureVector {
    std::string payload_id;
    int label = 0;  // 0 benign, 1 malicious
    std::string attack_type = "none";
    std::string domain;
    std::array<double, kFeatureCount> values{};
};

// Shannon entropy in bits over character frequencies; empty input gives 0.
double shannon_entropy(const std::string& text);

// Fraction of components that are action components carrying a risky action
// whose label admits none of the risky stems.
double semantic_inconsistency(const UIPayload& payload,
                              const KeywordLists& keywords = {});

// Total case-insensitive substring occurrences of the sensitive keywords
// across labels and binding paths.
int count_sensitive_keywords(const UIPayload& payload,
                             const KeywordLists& keywords = {});

// session_timestamps: the timestamps of every payload in this payload's
// session (deduplicated by sequence index), in sequence order. Must contain
// this payload's own timestamp.
FeatureVector extract_features(const UIPayload& payload,
                               const std::vector<std::int64_t>& session_timestamps,
                               const KeywordLists& keywords = {});

// features.csv round trip.
std::string feature_csv_header();
std::string feature_csv_row(const FeatureVector& fv);
std::vector<FeatureVector> parse_feature_csv(const std::string& text);

}  // namespace aegis
