#include "aegis/attacks.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "aegis/validator.hpp"

namespace aegis {
namespace {

std::string injected_id(int n) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "x_%03d", n);
    return buf;
}

std::vector<std::size_t> indices_with_role(const UIPayload& p, ComponentRole role) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < p.components.size(); ++i)
        if (p.components[i].role == role) out.push_back(i);
    return out;
}

// Weighted sample of k distinct indices.
std::vector<std::size_t> weighted_sample(Rng& rng, std::vector<double> weights,
                                         std::size_t k) {
    std::vector<std::size_t> picked;
    for (std::size_t n = 0; n < k; ++n) {
        const std::size_t i = rng.weighted_index(weights);
        picked.push_back(i);
        weights[i] = 0;
    }
    return picked;
}

std::set<std::string> descendants_of(const UIPayload& p, const std::string& root_id) {
    std::set<std::string> out{root_id};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& c : p.components) {
            if (c.parent_id && out.count(*c.parent_id) && !out.count(c.component_id)) {
                out.insert(c.component_id);
                grew = true;
            }
        }
    }
    return out;
}

void inject_phishing(UIPayload& p, Rng& rng, const AttackLexicon& atk,
                     AttackTrace& trace) {
    const auto containers = indices_with_role(p, ComponentRole::container);
    if (containers.empty()) throw InapplicableAttack("phishing: no container");
    const auto& host = p.components[rng.choice(containers)];
    const std::string host_id = host.component_id;

    // 2-5 injected components total: credential TextFields plus the fake
    // validation button.
    const int total = static_cast<int>(rng.uniform_int(2, 5));
    const int n_fields = total - 1;
    const auto field_picks =
        weighted_sample(rng, atk.phishing_field_weights, static_cast<std::size_t>(n_fields));

    int next_id = 0;
    for (const auto pick : field_picks) {
        UIComponent c;
        c.component_id = injected_id(next_id++);
        c.component_type = ComponentType::TextField;
        c.role = ComponentRole::input;
        c.label_text = atk.phishing_field_labels[pick];
        c.parent_id = host_id;
        trace.injected_component_ids.push_back(c.component_id);
        p.components.push_back(std::move(c));
    }
    UIComponent btn;
    btn.component_id = injected_id(next_id++);
    btn.component_type = ComponentType::Button;
    btn.role = ComponentRole::action;
    btn.label_text = atk.phishing_button_label;
    btn.action = atk.phishing_button_action;
    btn.parent_id = host_id;
    trace.injected_component_ids.push_back(btn.component_id);
    p.components.push_back(std::move(btn));
}

void inject_data_leakage(UIPayload& p, Rng& rng, const AttackLexicon& atk,
                         AttackTrace& trace) {
    std::vector<std::size_t> display_bindings;
    for (std::size_t i = 0; i < p.bindings.size(); ++i) {
        const auto* c = p.find_component(p.bindings[i].component_id);
        if (c && c->role == ComponentRole::display) display_bindings.push_back(i);
    }
    if (display_bindings.empty()) throw InapplicableAttack("data_leakage: no display binding");

    const auto k = static_cast<std::size_t>(
        rng.uniform_int(1, static_cast<std::int64_t>(std::min<std::size_t>(3, display_bindings.size()))));
    rng.shuffle(display_bindings);
    std::set<std::string> modified;
    for (std::size_t n = 0; n < k; ++n) {
        auto& b = p.bindings[display_bindings[n]];
        b.source_path = atk.internal_paths[rng.weighted_index(atk.internal_path_weights)];
        modified.insert(b.component_id);
    }
    trace.modified_component_ids.assign(modified.begin(), modified.end());
}

void inject_layout_abuse(UIPayload& p, Rng& rng, const Blueprints& bp,
                         AttackTrace& trace) {
    const DomainBlueprint& db = bp.for_domain(p.domain);

    // Wrap a non-root subtree in nested containers, then flood them with
    // filler components. The nesting count is capped so the result stays
    // under the relaxed malicious depth bound.
    std::map<std::string, int> depth_of;
    {
        std::map<std::string, std::size_t> idx;
        for (std::size_t i = 0; i < p.components.size(); ++i)
            idx[p.components[i].component_id] = i;
        for (const auto& c : p.components) {
            int d = 1;
            auto cur = c.parent_id;
            while (cur) {
                ++d;
                cur = p.components[idx[*cur]].parent_id;
            }
            depth_of[c.component_id] = d;
        }
    }

    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < p.components.size(); ++i) {
        if (!p.components[i].parent_id) continue;
        const auto sub = descendants_of(p, p.components[i].component_id);
        int sub_max = 0;
        for (const auto& id : sub) sub_max = std::max(sub_max, depth_of[id]);
        if (sub_max + 6 <= 14) candidates.push_back(i);
    }
    if (candidates.empty()) throw InapplicableAttack("layout_abuse: no wrappable subtree");

    const std::size_t victim = rng.choice(candidates);
    const auto sub = descendants_of(p, p.components[victim].component_id);
    int sub_max = 0;
    for (const auto& id : sub) sub_max = std::max(sub_max, depth_of[id]);

    const int layers = static_cast<int>(rng.uniform_int(6, std::min(12, 14 - sub_max)));
    const int fillers = static_cast<int>(rng.uniform_int(15, 40));

    const std::string old_parent = *p.components[victim].parent_id;
    int next_id = 0;
    std::vector<std::string> wrapper_ids;
    std::string parent = old_parent;
    for (int l = 0; l < layers; ++l) {
        UIComponent c;
        c.component_id = injected_id(next_id++);
        c.component_type = rng.bernoulli(0.7) ? ComponentType::Card : ComponentType::Modal;
        c.role = ComponentRole::container;
        c.label_text = rng.choice(db.container_labels);
        c.parent_id = parent;
        parent = c.component_id;
        wrapper_ids.push_back(c.component_id);
        trace.injected_component_ids.push_back(c.component_id);
        p.components.push_back(std::move(c));
    }
    p.components[victim].parent_id = parent;
    trace.modified_component_ids.push_back(p.components[victim].component_id);

    for (int f = 0; f < fillers; ++f) {
        UIComponent c;
        c.component_id = injected_id(next_id++);
        if (rng.bernoulli(0.7)) {
            c.component_type = ComponentType::Label;
            c.role = ComponentRole::display;
            c.label_text = rng.choice(db.display_labels);
        } else {
            c.component_type = ComponentType::Card;
            c.role = ComponentRole::container;
            c.label_text = rng.choice(db.container_labels);
        }
        c.parent_id = rng.choice(wrapper_ids);
        trace.injected_component_ids.push_back(c.component_id);
        p.components.push_back(std::move(c));
    }
}

void inject_manipulative_ui(UIPayload& p, Rng& rng, const AttackLexicon& atk,
                            AttackTrace& trace) {
    auto actions = indices_with_role(p, ComponentRole::action);
    if (actions.empty()) throw InapplicableAttack("manipulative_ui: no action component");

    const auto k = static_cast<std::size_t>(
        rng.uniform_int(1, static_cast<std::int64_t>(std::min<std::size_t>(2, actions.size()))));
    rng.shuffle(actions);
    for (std::size_t n = 0; n < k; ++n) {
        auto& c = p.components[actions[n]];
        c.label_text = rng.choice(atk.benign_phrases);
        c.action = rng.choice(atk.risky_operations);
        trace.modified_component_ids.push_back(c.component_id);
    }
    std::sort(trace.modified_component_ids.begin(), trace.modified_component_ids.end());
}

void inject_workflow_anomaly(UIPayload& p, Rng& rng, AttackTrace& trace) {
    const auto actions = indices_with_role(p, ComponentRole::action);
    if (actions.empty()) throw InapplicableAttack("workflow_anomaly: no action component");

    // Sequence every input and action component, then pull one approval-style
    // action ahead of the inputs it depends on (all inputs in its container's
    // subtree, and transitively everything else that was sequenced).
    std::set<std::string> modified;
    int order = 900;
    std::size_t sequenced = 0;
    for (auto& c : p.components) {
        if (c.role != ComponentRole::input && c.role != ComponentRole::action) continue;
        c.properties["order"] = static_cast<std::int64_t>(order);
        order += 5;
        ++sequenced;
        modified.insert(c.component_id);
    }
    (void)sequenced;

    auto& approval = p.components[rng.choice(actions)];
    approval.properties["order"] = static_cast<std::int64_t>(95);
    approval.properties["approved_without_review"] = true;
    modified.insert(approval.component_id);

    if (rng.bernoulli(0.5) && approval.parent_id) {
        for (auto& c : p.components) {
            if (c.component_id == *approval.parent_id) {
                c.properties["approved_without_review"] = true;
                modified.insert(c.component_id);
                break;
            }
        }
    }
    trace.modified_component_ids.assign(modified.begin(), modified.end());
}

Severity severity_for(AttackKind kind) {
    switch (kind) {
        case AttackKind::phishing_interface:
        case AttackKind::data_leakage:
        case AttackKind::manipulative_ui:
            return Severity::high;
        case AttackKind::workflow_anomaly:
            return Severity::medium;
        case AttackKind::layout_abuse:
            return Severity::low;
    }
    return Severity::low;
}

}  // namespace

std::pair<UIPayload, AttackTrace> mutate(const UIPayload& benign, AttackKind kind,
                                         Rng& rng, const Blueprints& bp,
                                         const std::string& mutant_id) {
    UIPayload p = benign;
    p.payload_id = mutant_id;

    AttackTrace trace;
    trace.attack_type = kind;
    trace.source_payload_id = benign.payload_id;
    trace.severity = severity_for(kind);

    switch (kind) {
        case AttackKind::phishing_interface:
            inject_phishing(p, rng, bp.attack, trace);
            break;
        case AttackKind::data_leakage:
            inject_data_leakage(p, rng, bp.attack, trace);
            break;
        case AttackKind::layout_abuse:
            inject_layout_abuse(p, rng, bp, trace);
            break;
        case AttackKind::manipulative_ui:
            inject_manipulative_ui(p, rng, bp.attack, trace);
            break;
        case AttackKind::workflow_anomaly:
            inject_workflow_anomaly(p, rng, trace);
            break;
    }

    p.metadata["label"] = "malicious";
    p.set_attack_trace(trace);
    return {std::move(p), std::move(trace)};
}

}  // namespace aegis
