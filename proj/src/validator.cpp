#include "aegis/validator.hpp"

#include <map>
#include <set>

namespace aegis {
namespace {

std::map<std::string, std::size_t> index_by_id(const UIPayload& p) {
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < p.components.size(); ++i)
        idx.emplace(p.components[i].component_id, i);
    return idx;
}

// Depth per component with root at depth 1; -1 marks unreachable/cyclic nodes.
std::vector<int> component_depths(const UIPayload& p,
                                  const std::map<std::string, std::size_t>& idx) {
    std::vector<int> depth(p.components.size(), -1);
    for (std::size_t i = 0; i < p.components.size(); ++i) {
        if (depth[i] >= 0) continue;
        std::vector<std::size_t> chain;
        std::size_t cur = i;
        int base = -1;
        std::set<std::size_t> on_chain;
        while (true) {
            if (depth[cur] >= 0) { base = depth[cur]; break; }
            if (on_chain.count(cur)) break;  // cycle
            on_chain.insert(cur);
            chain.push_back(cur);
            const auto& parent = p.components[cur].parent_id;
            if (!parent) { base = 0; break; }
            auto it = idx.find(*parent);
            if (it == idx.end()) break;  // dangling parent
            cur = it->second;
        }
        if (base < 0) continue;
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth[*it] = ++base;
    }
    return depth;
}

}  // namespace

int max_depth(const UIPayload& p) {
    const auto idx = index_by_id(p);
    const auto depths = component_depths(p, idx);
    int best = 0;
    for (int d : depths) best = std::max(best, d);
    return best;
}

ValidationReport validate(const UIPayload& p, PayloadLabel label,
                          const ValidationBounds& bounds) {
    ValidationReport report;
    report.stage = ValidationStage::schema;
    auto add = [&](const char* code, std::optional<std::string> cid, std::string msg) {
        report.violations.push_back({code, std::move(cid), std::move(msg)});
    };

    // --- schema stage ---
    std::set<std::string> seen;
    for (const auto& c : p.components) {
        if (!seen.insert(c.component_id).second)
            add(violation::DUPLICATE_ID, c.component_id, "duplicate component_id");
    }

    const auto idx = index_by_id(p);
    int roots = 0;
    for (const auto& c : p.components) {
        if (!c.parent_id) {
            ++roots;
            continue;
        }
        auto it = idx.find(*c.parent_id);
        if (it == idx.end()) {
            add(violation::PARENT_UNRESOLVED, c.component_id,
                "parent_id \"" + *c.parent_id + "\" does not exist");
        } else if (p.components[it->second].role != ComponentRole::container) {
            add(violation::PARENT_NOT_CONTAINER, c.component_id,
                "parent \"" + *c.parent_id + "\" is not a container");
        }
    }
    if (roots == 0 && !p.components.empty())
        add(violation::NO_ROOT, std::nullopt, "no root component");
    if (roots > 1)
        add(violation::MULTIPLE_ROOTS, std::nullopt, "more than one root component");

    const auto depths = component_depths(p, idx);
    for (std::size_t i = 0; i < p.components.size(); ++i) {
        if (depths[i] < 0)
            add(violation::NOT_A_TREE, p.components[i].component_id,
                "component not reachable from the root (cycle or dangling chain)");
    }

    for (const auto& b : p.bindings) {
        auto it = idx.find(b.component_id);
        if (it == idx.end()) {
            add(violation::BINDING_UNRESOLVED, b.component_id,
                "binding references unknown component");
        } else {
            const auto role = p.components[it->second].role;
            if (role != ComponentRole::input && role != ComponentRole::display)
                add(violation::BINDING_BAD_ROLE, b.component_id,
                    "binding target must have input or display role");
        }
    }

    for (const auto& c : p.components) {
        const bool has_action = c.action.has_value() && !c.action->empty();
        if ((c.role == ComponentRole::action) != has_action)
            add(violation::ACTION_ROLE_MISMATCH, c.component_id,
                "action field present iff role is action");
    }

    const bool is_malicious = label == PayloadLabel::malicious;
    if (is_malicious != p.metadata.contains("attack_trace"))
        add(violation::LABEL_TRACE_MISMATCH, std::nullopt,
            "attack_trace must be present iff the payload is malicious");

    if (!report.violations.empty()) {
        report.passed = false;
        return report;
    }

    // --- logical stage ---
    report.stage = ValidationStage::logical;
    const int depth_cap = is_malicious ? bounds.malicious_depth_max : bounds.benign_depth_max;
    int deepest = 0;
    for (int d : depths) deepest = std::max(deepest, d);
    if (!p.components.empty() && (deepest < bounds.depth_min || deepest > depth_cap))
        add(violation::DEPTH_OUT_OF_BOUNDS, std::nullopt,
            "max depth " + std::to_string(deepest) + " outside [" +
                std::to_string(bounds.depth_min) + ", " + std::to_string(depth_cap) + "]");

    for (const auto& c : p.components) {
        if (c.component_type == ComponentType::Table && !c.properties.count("row_count"))
            add(violation::TABLE_MISSING_ROW_COUNT, c.component_id,
                "Table lacks row_count property");
    }

    // Every Form must contain at least one input-role descendant.
    for (std::size_t i = 0; i < p.components.size(); ++i) {
        if (p.components[i].component_type != ComponentType::Form) continue;
        bool found = false;
        for (std::size_t j = 0; j < p.components.size() && !found; ++j) {
            if (p.components[j].role != ComponentRole::input) continue;
            // walk ancestors of j
            std::size_t cur = j;
            for (int hops = 0; hops <= static_cast<int>(p.components.size()); ++hops) {
                const auto& parent = p.components[cur].parent_id;
                if (!parent) break;
                auto it = idx.find(*parent);
                if (it == idx.end()) break;
                cur = it->second;
                if (cur == i) { found = true; break; }
            }
        }
        if (!found)
            add(violation::FORM_WITHOUT_INPUT, p.components[i].component_id,
                "Form has no input-role descendant");
    }

    report.passed = report.violations.empty();
    return report;
}

}  // namespace aegis
