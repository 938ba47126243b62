#pragma once

#include <array>
#include <string>
#include <vector>

#include "aegis/payload.hpp"

namespace aegis {

// One (label, action) pair a benign action component can draw, with its
// sampling weight.
struct ActionEntry {
    std::string label;
    std::string action;
    double weight = 1.0;
};

struct DomainBlueprint {
    int component_count_min = 5;
    int component_count_max = 40;
    std::vector<std::string> container_labels;
    std::vector<std::string> input_labels;
    std::vector<std::string> display_labels;
    std::vector<ActionEntry> action_entries;
    std::vector<std::string> binding_paths;
};

// Shared attack lexicons; injected labels and internal paths line up with the
// feature module's keyword lists so phishing/leakage stay detectable.
struct AttackLexicon {
    std::vector<std::string> phishing_field_labels;
    std::vector<double> phishing_field_weights;
    std::string phishing_button_label;
    std::string phishing_button_action;
    std::vector<std::string> internal_paths;
    std::vector<double> internal_path_weights;
    std::vector<std::string> benign_phrases;
    std::vector<std::string> risky_operations;
};

struct Blueprints {
    std::array<DomainBlueprint, kDomainCount> domains;
    AttackLexicon attack;

    const DomainBlueprint& for_domain(DomainKind d) const {
        return domains[static_cast<int>(d)];
    }
};

Blueprints load_blueprints(const std::string& path);

}  // namespace aegis
