#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "aegis/attacks.hpp"
#include "aegis/blueprint.hpp"
#include "aegis/features.hpp"
#include "aegis/generator.hpp"
#include "aegis/validator.hpp"

using namespace aegis;

namespace {

std::string lower_copy(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

// Naive re-implementation of all 18 features, written directly from their
// definitions without sharing code with the production extractor.
std::array<double, kFeatureCount> naive_features(const UIPayload& p,
                                                 const std::vector<std::int64_t>& session,
                                                 const KeywordLists& kw) {
    std::array<double, kFeatureCount> f{};
    const double n = static_cast<double>(p.components.size());

    f[0] = n;

    std::set<std::string> type_names;
    for (const auto& c : p.components) type_names.insert(to_string(c.component_type));
    f[1] = static_cast<double>(type_names.size());

    f[2] = static_cast<double>(max_depth(p));

    std::map<std::string, double> kids;
    for (const auto& c : p.components)
        if (c.parent_id) kids[*c.parent_id] += 1.0;
    double kid_sum = 0.0;
    for (const auto& [id, k] : kids) kid_sum += k;
    f[3] = kids.empty() ? 0.0 : kid_sum / static_cast<double>(kids.size());

    f[4] = n > 1 ? 2.0 * (n - 1.0) / (n * (n - 1.0)) : 0.0;

    f[5] = static_cast<double>(canonical_serialize(p).size());

    double containers = 0, actions = 0;
    for (const auto& c : p.components) {
        containers += c.role == ComponentRole::container ? 1.0 : 0.0;
        actions += c.role == ComponentRole::action ? 1.0 : 0.0;
    }
    f[6] = n > 0 ? containers / n : 0.0;
    f[7] = n > 0 ? actions / n : 0.0;

    double chars = 0.0;
    std::string all_text;
    for (const auto& c : p.components) {
        chars += static_cast<double>(c.label_text.size());
        all_text += c.label_text;
    }
    f[8] = n > 0 ? chars / n : 0.0;

    if (all_text.empty()) {
        f[9] = 0.0;
    } else {
        std::map<char, double> freq;
        for (char c : all_text) freq[c] += 1.0;
        double h = 0.0;
        for (const auto& [c, k] : freq) {
            const double prob = k / static_cast<double>(all_text.size());
            h -= prob * std::log2(prob);
        }
        f[9] = h;
    }

    double keyword_hits = 0.0;
    auto count_in = [&](const std::string& text) {
        const std::string low = lower_copy(text);
        for (const auto& k : kw.sensitive_keywords)
            for (std::size_t at = low.find(k); at != std::string::npos; at = low.find(k, at + 1))
                keyword_hits += 1.0;
    };
    for (const auto& c : p.components) count_in(c.label_text);
    for (const auto& b : p.bindings) count_in(b.source_path);
    f[10] = keyword_hits;

    double mismatches = 0.0;
    for (const auto& c : p.components) {
        if (c.role != ComponentRole::action || !c.action) continue;
        bool risky = false;
        for (const auto& a : kw.risky_actions) risky = risky || a == *c.action;
        if (!risky) continue;
        const std::string low = lower_copy(c.label_text);
        bool stem = false;
        for (const auto& s : kw.risky_label_stems)
            stem = stem || low.find(s) != std::string::npos;
        if (!stem) mismatches += 1.0;
    }
    f[11] = n > 0 ? mismatches / n : 0.0;

    double num_sum = 0.0, num_count = 0.0;
    for (const auto& c : p.components)
        for (const auto& [k, v] : c.properties) {
            if (std::holds_alternative<std::int64_t>(v)) {
                num_sum += static_cast<double>(std::get<std::int64_t>(v));
                num_count += 1.0;
            } else if (std::holds_alternative<double>(v)) {
                num_sum += std::get<double>(v);
                num_count += 1.0;
            }
        }
    f[12] = num_count > 0 ? num_sum / num_count : 0.0;

    f[13] = static_cast<double>(p.bindings.size());

    double flag = 0.0;
    for (const auto& b : p.bindings) {
        const std::string low = lower_copy(b.source_path);
        for (const auto& k : kw.sensitive_binding_keywords)
            if (low.find(k) != std::string::npos) flag = 1.0;
    }
    f[14] = flag;

    if (!p.bindings.empty()) {
        double shared = 0.0;
        for (const auto& b : p.bindings) {
            std::set<std::string> users;
            for (const auto& other : p.bindings)
                if (other.source_path == b.source_path) users.insert(other.component_id);
            if (users.size() >= 2) shared += 1.0;
        }
        f[15] = shared / static_cast<double>(p.bindings.size());
    }

    if (session.size() >= 2) {
        const double m = static_cast<double>(session.size());
        double mean = 0.0;
        for (auto t : session) mean += static_cast<double>(t);
        mean /= m;
        double var = 0.0;
        for (auto t : session) var += (static_cast<double>(t) - mean) * (static_cast<double>(t) - mean);
        f[16] = var / m;
        f[17] = static_cast<double>(session.back() - session.front()) / (m - 1.0);
    }
    return f;
}

Blueprints test_blueprints() {
    return load_blueprints(std::string(AEGIS_SOURCE_DIR) + "/data/blueprints.json");
}

}  // namespace

TEST_CASE("shannon entropy reference values") {
    CHECK(shannon_entropy("") == 0.0);
    CHECK(shannon_entropy("aaaa") == 0.0);
    CHECK(shannon_entropy("aabb") == doctest::Approx(1.0).epsilon(1e-12));
    // two of three chars 'a': H = -(2/3)log2(2/3) - (1/3)log2(1/3)
    const double expected = -(2.0 / 3.0) * std::log2(2.0 / 3.0) - (1.0 / 3.0) * std::log2(1.0 / 3.0);
    CHECK(shannon_entropy("aab") == doctest::Approx(expected).epsilon(1e-12));
    CHECK(shannon_entropy("aab") == doctest::Approx(0.9183).epsilon(1e-4));
    CHECK(shannon_entropy("abcd") == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("one masked risky action among twenty components scores 0.05") {
    UIPayload p;
    p.payload_id = "p_x";
    UIComponent root;
    root.component_id = "c_000";
    root.component_type = ComponentType::Card;
    root.role = ComponentRole::container;
    root.label_text = "Panel";
    p.components.push_back(root);
    for (int i = 1; i < 20; ++i) {
        UIComponent c;
        c.component_id = "c_" + std::to_string(i);
        c.parent_id = "c_000";
        if (i == 5) {
            c.component_type = ComponentType::Button;
            c.role = ComponentRole::action;
            c.label_text = "Continue";          // benign-sounding
            c.action = "delete_account";        // risky operation
        } else {
            c.component_type = ComponentType::Label;
            c.role = ComponentRole::display;
            c.label_text = "Item " + std::to_string(i);
        }
        p.components.push_back(c);
    }
    CHECK(semantic_inconsistency(p) == doctest::Approx(0.05).epsilon(1e-12));

    // labelling the action honestly clears the score
    p.components[5].label_text = "Delete account";
    CHECK(semantic_inconsistency(p) == 0.0);
}

TEST_CASE("sensitive keyword counting is case-insensitive and spans bindings") {
    UIPayload p;
    UIComponent c;
    c.component_id = "c_000";
    c.component_type = ComponentType::Label;
    c.role = ComponentRole::display;
    c.label_text = "Enter PASSWORD and secret token";
    p.components.push_back(c);
    p.bindings.push_back({"c_000", "vault.secret_password"});
    CHECK(count_sensitive_keywords(p) == 5);  // password, secret, token, secret, password
}

TEST_CASE("feature extraction matches the naive oracle on 100 generated payloads") {
    const auto bp = test_blueprints();
    GeneratorConfig cfg;
    cfg.seed = 424242;
    const KeywordLists kw;

    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        Rng rng(cfg.seed, "features/oracle/" + std::to_string(i));
        const auto domain = static_cast<DomainKind>(i % kDomainCount);
        const SessionMeta session{"s_" + std::to_string(i / 3), 1700000000 + 100 * i,
                                  i % 3};
        UIPayload p = generate_benign(domain, rng, cfg, bp, session,
                                      "p_" + std::to_string(i));
        if (i % 4 == 0) {  // cover malicious payloads too
            Rng arng(cfg.seed, "features/mutate/" + std::to_string(i));
            const auto kind = static_cast<AttackKind>(i % kAttackKindCount);
            try {
                p = mutate(p, kind, arng, bp, "m_" + std::to_string(i)).first;
            } catch (const InapplicableAttack&) {
                // keep the benign payload for this row
            }
        }
        std::vector<std::int64_t> timeline = {p.timestamp, p.timestamp + 12,
                                              p.timestamp + 40};
        const auto fv = extract_features(p, timeline, kw);
        const auto oracle = naive_features(p, timeline, kw);
        for (int j = 0; j < kFeatureCount; ++j) {
            INFO("payload ", i, " feature ", kFeatureNames[static_cast<std::size_t>(j)]);
            CHECK(fv.values[static_cast<std::size_t>(j)] ==
                  doctest::Approx(oracle[static_cast<std::size_t>(j)]).epsilon(1e-9));
        }
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("degenerate inputs fall back to zero by convention") {
    UIPayload p;  // no components, no bindings
    const auto fv = extract_features(p, {1700000000}, {});
    for (int j = 0; j < kFeatureCount; ++j) {
        if (j == 5) continue;  // serialized size is never zero
        CHECK(fv.values[static_cast<std::size_t>(j)] == 0.0);
    }
    CHECK(fv.values[5] > 0.0);
}

TEST_CASE("singleton sessions have zero variance and zero interval") {
    UIPayload p;
    UIComponent c;
    c.component_id = "c_000";
    c.component_type = ComponentType::Card;
    c.role = ComponentRole::container;
    c.label_text = "Root";
    p.components.push_back(c);
    const auto fv = extract_features(p, {1700000123}, {});
    CHECK(fv.values[16] == 0.0);
    CHECK(fv.values[17] == 0.0);
}

TEST_CASE("session features follow population variance and mean gap") {
    UIPayload p;
    UIComponent c;
    c.component_id = "c_000";
    c.component_type = ComponentType::Card;
    c.role = ComponentRole::container;
    c.label_text = "Root";
    p.components.push_back(c);
    const auto fv = extract_features(p, {100, 110, 130}, {});
    // mean 113.333…; population variance = (13.33^2 + 3.33^2 + 16.66^2)/3
    const double mean = (100.0 + 110.0 + 130.0) / 3.0;
    const double var =
        ((100 - mean) * (100 - mean) + (110 - mean) * (110 - mean) + (130 - mean) * (130 - mean)) /
        3.0;
    CHECK(fv.values[16] == doctest::Approx(var).epsilon(1e-12));
    CHECK(fv.values[17] == doctest::Approx(15.0).epsilon(1e-12));
}

TEST_CASE("feature CSV round-trips exactly") {
    const auto bp = test_blueprints();
    GeneratorConfig cfg;
    cfg.seed = 77;
    Rng rng(cfg.seed, "features/csv");
    const SessionMeta session{"s_0", 1700000000, 0};
    const auto p =
        generate_benign(DomainKind::analytics_dashboard, rng, cfg, bp, session, "p_0");
    const auto fv = extract_features(p, {p.timestamp, p.timestamp + 9}, {});

    const std::string csv = feature_csv_header() + "\n" + feature_csv_row(fv) + "\n";
    const auto parsed = parse_feature_csv(csv);
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0].payload_id == fv.payload_id);
    CHECK(parsed[0].label == fv.label);
    CHECK(parsed[0].attack_type == fv.attack_type);
    CHECK(parsed[0].domain == fv.domain);
    for (int j = 0; j < kFeatureCount; ++j)
        CHECK(parsed[0].values[static_cast<std::size_t>(j)] ==
              fv.values[static_cast<std::size_t>(j)]);  // bitwise round-trip
}

TEST_CASE("feature CSV rejects malformed input") {
    CHECK_THROWS(parse_feature_csv(""));
    CHECK_THROWS(parse_feature_csv("wrong,header\n"));
    CHECK_THROWS(parse_feature_csv(feature_csv_header() + "\nonly,three,cells\n"));
}
