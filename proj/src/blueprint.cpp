#include "aegis/blueprint.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace aegis {

Blueprints load_blueprints(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open blueprint file: " + path);
    nlohmann::json j;
    in >> j;

    Blueprints bp;
    const auto& domains = j.at("domains");
    for (int d = 0; d < kDomainCount; ++d) {
        const std::string name = to_string(static_cast<DomainKind>(d));
        const auto& dj = domains.at(name);
        DomainBlueprint& db = bp.domains[d];
        db.component_count_min = dj.at("component_count_range").at(0).get<int>();
        db.component_count_max = dj.at("component_count_range").at(1).get<int>();
        db.container_labels = dj.at("container_labels").get<std::vector<std::string>>();
        db.input_labels = dj.at("input_labels").get<std::vector<std::string>>();
        db.display_labels = dj.at("display_labels").get<std::vector<std::string>>();
        for (const auto& ej : dj.at("action_entries")) {
            db.action_entries.push_back({ej.at("label").get<std::string>(),
                                         ej.at("action").get<std::string>(),
                                         ej.value("weight", 1.0)});
        }
        db.binding_paths = dj.at("binding_paths").get<std::vector<std::string>>();
        if (db.container_labels.empty() || db.input_labels.empty() ||
            db.display_labels.empty() || db.action_entries.empty() ||
            db.binding_paths.empty()) {
            throw std::runtime_error("blueprint for " + name + " has an empty lexicon");
        }
    }

    const auto& aj = j.at("attack");
    AttackLexicon& atk = bp.attack;
    atk.phishing_field_labels = aj.at("phishing_field_labels").get<std::vector<std::string>>();
    atk.phishing_field_weights = aj.at("phishing_field_weights").get<std::vector<double>>();
    atk.phishing_button_label = aj.at("phishing_button_label").get<std::string>();
    atk.phishing_button_action = aj.at("phishing_button_action").get<std::string>();
    atk.internal_paths = aj.at("internal_paths").get<std::vector<std::string>>();
    atk.internal_path_weights = aj.at("internal_path_weights").get<std::vector<double>>();
    atk.benign_phrases = aj.at("benign_phrases").get<std::vector<std::string>>();
    atk.risky_operations = aj.at("risky_operations").get<std::vector<std::string>>();
    if (atk.phishing_field_labels.size() != atk.phishing_field_weights.size() ||
        atk.internal_paths.size() != atk.internal_path_weights.size()) {
        throw std::runtime_error("blueprint attack lexicon weight lists misaligned");
    }
    return bp;
}

}  // namespace aegis
