#include "aegis/generator.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace aegis {
namespace {

std::string format_id(const char* prefix, int n) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%s%06d", prefix, n);
    return buf;
}

std::string component_id(int n) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "c_%03d", n);
    return buf;
}

ComponentRole role_of(ComponentType t) {
    switch (t) {
        case ComponentType::Card:
        case ComponentType::Form:
        case ComponentType::Modal:
            return ComponentRole::container;
        case ComponentType::Button:
            return ComponentRole::action;
        case ComponentType::TextField:
        case ComponentType::Dropdown:
        case ComponentType::Checkbox:
            return ComponentRole::input;
        case ComponentType::Table:
        case ComponentType::Label:
        case ComponentType::Chart:
            return ComponentRole::display;
    }
    return ComponentRole::display;
}

ComponentType draw_type(Rng& rng) {
    // role mix: container .20, action .15, input .28, display .37
    const double u = rng.uniform_real();
    if (u < 0.20) {
        const double v = rng.uniform_real();
        return v < 0.5 ? ComponentType::Card
                       : (v < 0.75 ? ComponentType::Form : ComponentType::Modal);
    }
    if (u < 0.35) return ComponentType::Button;
    if (u < 0.63) {
        const double v = rng.uniform_real();
        return v < 0.45 ? ComponentType::TextField
                        : (v < 0.75 ? ComponentType::Dropdown : ComponentType::Checkbox);
    }
    const double v = rng.uniform_real();
    return v < 0.45 ? ComponentType::Label
                    : (v < 0.70 ? ComponentType::Table : ComponentType::Chart);
}

const ActionEntry& draw_action_entry(Rng& rng, const DomainBlueprint& db) {
    std::vector<double> w;
    w.reserve(db.action_entries.size());
    for (const auto& e : db.action_entries) w.push_back(e.weight);
    return db.action_entries[rng.weighted_index(w)];
}

UIPayload build_benign(DomainKind domain, Rng& rng, const GeneratorConfig& cfg,
                       const Blueprints& bp, const SessionMeta& session,
                       const std::string& payload_id) {
    const DomainBlueprint& db = bp.for_domain(domain);

    int lo = std::max(cfg.component_count_min, db.component_count_min);
    int hi = std::min(cfg.component_count_max, db.component_count_max);
    if (lo > hi) {  // config overrides an incompatible blueprint range
        lo = cfg.component_count_min;
        hi = cfg.component_count_max;
    }
    const int n = static_cast<int>(rng.uniform_int(lo, hi));
    int depth_cap = static_cast<int>(rng.uniform_int(cfg.depth_min, cfg.depth_max));
    if (n > 1) depth_cap = std::max(depth_cap, 2);

    UIPayload p;
    p.payload_id = payload_id;
    p.session_id = session.session_id;
    p.timestamp = session.timestamp;
    p.sequence_index = session.sequence_index;
    p.domain = domain;
    p.schema_version = kSchemaVersion;
    p.metadata["label"] = "benign";
    p.metadata["generator"] = {{"seed", cfg.seed}, {"blueprint", "1.0"}};

    std::vector<int> depth;  // per component, root = 1

    UIComponent root;
    root.component_id = component_id(0);
    root.component_type =
        domain == DomainKind::form_submission ? ComponentType::Form : ComponentType::Card;
    root.role = ComponentRole::container;
    root.label_text = rng.choice(db.container_labels);
    p.components.push_back(std::move(root));
    depth.push_back(1);

    auto pick_parent = [&]() -> int {
        std::vector<int> eligible;
        for (std::size_t i = 0; i < p.components.size(); ++i)
            if (p.components[i].role == ComponentRole::container && depth[i] < depth_cap)
                eligible.push_back(static_cast<int>(i));
        return eligible[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(eligible.size()) - 1))];
    };

    int bound_display = -1;  // index of the always-bound display component
    for (int i = 1; i < n; ++i) {
        UIComponent c;
        c.component_id = component_id(i);
        if (i == 1) {
            // every screen carries a primary action
            c.component_type = ComponentType::Button;
        } else if (i == 2) {
            // and a primary data view, always bound
            c.component_type = ComponentType::Label;
            bound_display = i;
        } else {
            c.component_type = draw_type(rng);
        }
        c.role = role_of(c.component_type);

        const int parent = pick_parent();
        c.parent_id = p.components[parent].component_id;

        switch (c.role) {
            case ComponentRole::container:
                c.label_text = rng.choice(db.container_labels);
                break;
            case ComponentRole::action: {
                const ActionEntry& e = draw_action_entry(rng, db);
                c.label_text = e.label;
                c.action = e.action;
                break;
            }
            case ComponentRole::input:
                c.label_text = rng.choice(db.input_labels);
                break;
            case ComponentRole::display:
                c.label_text = rng.choice(db.display_labels);
                break;
        }
        if (c.component_type == ComponentType::Table)
            c.properties["row_count"] = rng.uniform_int(5, 500);
        if (c.component_type == ComponentType::TextField)
            c.properties["max_length"] = rng.uniform_int(16, 256);

        depth.push_back(depth[static_cast<std::size_t>(parent)] + 1);
        p.components.push_back(std::move(c));
    }

    // A Form with no input descendant cannot pass the logical gate; demote it
    // to a plain Card.
    for (auto& c : p.components) {
        if (c.component_type != ComponentType::Form) continue;
        const std::string& fid = c.component_id;
        bool found = false;
        std::set<std::string> sub{fid};
        bool grew = true;
        while (grew && !found) {
            grew = false;
            for (const auto& d : p.components) {
                if (d.parent_id && sub.count(*d.parent_id) && !sub.count(d.component_id)) {
                    sub.insert(d.component_id);
                    grew = true;
                    if (d.role == ComponentRole::input) { found = true; break; }
                }
            }
        }
        if (!found) c.component_type = ComponentType::Card;
    }

    for (std::size_t i = 0; i < p.components.size(); ++i) {
        const auto& c = p.components[i];
        if (c.role != ComponentRole::input && c.role != ComponentRole::display) continue;
        const bool forced = static_cast<int>(i) == bound_display;
        if (forced || rng.bernoulli(cfg.binding_probability))
            p.bindings.push_back({c.component_id, rng.choice(db.binding_paths)});
    }
    return p;
}

std::vector<int> quota_counts(const double* weights, int k, int total) {
    double sum = 0;
    for (int i = 0; i < k; ++i) sum += weights[i];
    if (sum <= 0) throw std::invalid_argument("quota_counts: no weight mass");
    std::vector<int> counts(k, 0);
    std::vector<std::pair<double, int>> remainders;
    int assigned = 0;
    for (int i = 0; i < k; ++i) {
        const double exact = weights[i] / sum * total;
        counts[i] = static_cast<int>(exact);
        assigned += counts[i];
        remainders.push_back({exact - counts[i], i});
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int r = 0; r < total - assigned; ++r) counts[remainders[static_cast<std::size_t>(r)].second]++;
    return counts;
}

}  // namespace

UIPayload generate_benign(DomainKind domain, Rng& rng, const GeneratorConfig& cfg,
                          const Blueprints& bp, const SessionMeta& session,
                          const std::string& payload_id) {
    for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
        UIPayload p = build_benign(domain, rng, cfg, bp, session, payload_id);
        if (validate(p, PayloadLabel::benign).passed) return p;
    }
    throw std::runtime_error("generate_benign: bounds unsatisfiable after retries (" +
                             payload_id + ")");
}

Corpus generate_dataset(const GeneratorConfig& cfg, const Blueprints& bp,
                        int n_benign, int n_malicious, const AttackMix& mix) {
    if (n_benign < 0 || n_malicious < 0)
        throw std::invalid_argument("generate_dataset: negative counts");
    if (n_malicious > 0 && n_benign <= 0)
        throw std::invalid_argument("generate_dataset: mutants need benign sources");

    Corpus corpus;
    corpus.log.seed = cfg.seed;

    // Balanced domain quota, shuffled deterministically.
    std::vector<DomainKind> domains;
    if (n_benign > 0) {
        const auto counts = quota_counts(cfg.domain_weights, kDomainCount, n_benign);
        for (int d = 0; d < kDomainCount; ++d)
            for (int i = 0; i < counts[static_cast<std::size_t>(d)]; ++i)
                domains.push_back(static_cast<DomainKind>(d));
        Rng shuffle_rng(cfg.seed, "gen/domains");
        shuffle_rng.shuffle(domains);
    }

    // Session layout: 1-3 payloads per session, per-session base timestamp,
    // 1-30s gaps.
    std::vector<SessionMeta> sessions(static_cast<std::size_t>(n_benign));
    {
        Rng srng(cfg.seed, "gen/sessions");
        int i = 0, sid = 0;
        while (i < n_benign) {
            int len = static_cast<int>(
                srng.uniform_int(cfg.session_length_min, cfg.session_length_max));
            len = std::min(len, n_benign - i);
            char buf[16];
            std::snprintf(buf, sizeof(buf), "s_%05d", sid++);
            std::int64_t ts = 1700000000 + srng.uniform_int(0, 31536000);
            for (int k = 0; k < len; ++k) {
                if (k > 0) ts += srng.uniform_int(1, 30);
                sessions[static_cast<std::size_t>(i)] = {buf, ts, k};
                ++i;
            }
        }
    }

    for (int i = 0; i < n_benign; ++i) {
        const std::string id = format_id("p_", i);
        Rng rng(cfg.seed, "gen/benign/" + std::to_string(i));
        // bounded retry loop with rejection accounting
        UIPayload payload;
        bool ok = false;
        for (int attempt = 0; attempt <= cfg.max_retries && !ok; ++attempt) {
            payload = build_benign(domains[static_cast<std::size_t>(i)], rng, cfg, bp,
                                   sessions[static_cast<std::size_t>(i)], id);
            const auto report = validate(payload, PayloadLabel::benign);
            if (report.passed) {
                ok = true;
            } else {
                ++corpus.log.validation_rejections;
                nlohmann::json line;
                line["payload_id"] = id;
                line["label"] = "benign";
                line["stage"] = report.stage == ValidationStage::schema ? "schema" : "logical";
                auto codes = nlohmann::json::array();
                for (const auto& v : report.violations) codes.push_back(v.code);
                line["violations"] = std::move(codes);
                corpus.log.rejection_lines.push_back(line.dump());
            }
        }
        if (!ok)
            throw std::runtime_error("generate_dataset: benign payload " + id +
                                     " failed validation after retries");
        corpus.log.domain_counts[static_cast<int>(payload.domain)]++;
        corpus.benign.push_back(std::move(payload));
        ++corpus.log.benign_generated;
    }

    // Attack kinds by largest-remainder quota over the mix, shuffled.
    std::vector<AttackKind> kinds;
    if (n_malicious > 0) {
        const auto counts = quota_counts(mix.weights, kAttackKindCount, n_malicious);
        for (int k = 0; k < kAttackKindCount; ++k)
            for (int i = 0; i < counts[static_cast<std::size_t>(k)]; ++i)
                kinds.push_back(static_cast<AttackKind>(k));
        Rng shuffle_rng(cfg.seed, "atk/kinds");
        shuffle_rng.shuffle(kinds);
    }

    for (int j = 0; j < n_malicious; ++j) {
        const std::string id = format_id("m_", j);
        const AttackKind kind = kinds[static_cast<std::size_t>(j)];
        Rng rng(cfg.seed, "atk/mut/" + std::to_string(j));
        bool ok = false;
        for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
            const auto src = static_cast<std::size_t>(rng.uniform_int(0, n_benign - 1));
            try {
                auto [mutant, trace] = mutate(corpus.benign[src], kind, rng, bp, id);
                const auto report = validate(mutant, PayloadLabel::malicious);
                if (!report.passed) {
                    ++corpus.log.validation_rejections;
                    nlohmann::json line;
                    line["payload_id"] = id;
                    line["label"] = "malicious";
                    line["stage"] =
                        report.stage == ValidationStage::schema ? "schema" : "logical";
                    auto codes = nlohmann::json::array();
                    for (const auto& v : report.violations) codes.push_back(v.code);
                    line["violations"] = std::move(codes);
                    corpus.log.rejection_lines.push_back(line.dump());
                    continue;
                }
                corpus.log.attack_counts[static_cast<int>(kind)]++;
                corpus.malicious.push_back(std::move(mutant));
                ++corpus.log.malicious_generated;
                ok = true;
            } catch (const InapplicableAttack&) {
                ++corpus.log.attack_resamples;
            }
        }
        if (!ok)
            throw std::runtime_error("generate_dataset: could not place attack for " + id);
    }

    const int accepted = corpus.log.benign_generated + corpus.log.malicious_generated;
    const int attempts = accepted + corpus.log.validation_rejections;
    corpus.log.rejection_rate =
        attempts > 0 ? static_cast<double>(corpus.log.validation_rejections) / attempts : 0.0;
    if (corpus.log.rejection_rate > cfg.max_rejection_rate)
        throw std::runtime_error("generate_dataset: rejection rate " +
                                 std::to_string(corpus.log.rejection_rate) +
                                 " exceeds configured cap");
    return corpus;
}

}  // namespace aegis
