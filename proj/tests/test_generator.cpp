#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <string>

#include "aegis/generator.hpp"
#include "aegis/validator.hpp"

using namespace aegis;

namespace {

Blueprints test_blueprints() {
    return load_blueprints(std::string(AEGIS_SOURCE_DIR) + "/data/blueprints.json");
}

GeneratorConfig small_config() {
    GeneratorConfig cfg;
    cfg.seed = 1337;
    return cfg;
}

}  // namespace

TEST_CASE("generation is deterministic payload for payload") {
    const auto bp = test_blueprints();
    const auto a = generate_dataset(small_config(), bp, 40, 15);
    const auto b = generate_dataset(small_config(), bp, 40, 15);
    REQUIRE(a.benign.size() == b.benign.size());
    REQUIRE(a.malicious.size() == b.malicious.size());
    for (std::size_t i = 0; i < a.benign.size(); ++i)
        CHECK(canonical_serialize(a.benign[i]) == canonical_serialize(b.benign[i]));
    for (std::size_t i = 0; i < a.malicious.size(); ++i)
        CHECK(canonical_serialize(a.malicious[i]) == canonical_serialize(b.malicious[i]));
}

TEST_CASE("a different seed changes the corpus") {
    const auto bp = test_blueprints();
    auto cfg = small_config();
    const auto a = generate_dataset(cfg, bp, 10, 0);
    cfg.seed = 7331;
    const auto b = generate_dataset(cfg, bp, 10, 0);
    int identical = 0;
    for (std::size_t i = 0; i < a.benign.size(); ++i)
        if (canonical_serialize(a.benign[i]) == canonical_serialize(b.benign[i])) ++identical;
    CHECK(identical == 0);
}

TEST_CASE("every generated payload passes validation and the declared bounds") {
    const auto bp = test_blueprints();
    const auto cfg = small_config();
    const auto corpus = generate_dataset(cfg, bp, 60, 25);
    REQUIRE(corpus.benign.size() == 60);
    REQUIRE(corpus.malicious.size() == 25);

    for (const auto& p : corpus.benign) {
        CHECK(validate(p, PayloadLabel::benign).passed);
        const int n = static_cast<int>(p.components.size());
        CHECK(n >= cfg.component_count_min);
        CHECK(n <= cfg.component_count_max);
        CHECK(max_depth(p) >= 1);
        CHECK(max_depth(p) <= cfg.depth_max);
        CHECK(p.schema_version == kSchemaVersion);
        CHECK_FALSE(p.is_malicious());
    }
    for (const auto& p : corpus.malicious) {
        CHECK(validate(p, PayloadLabel::malicious).passed);
        CHECK(p.is_malicious());
        REQUIRE(p.attack_trace().has_value());
    }
}

TEST_CASE("benign domains follow the balanced quota") {
    const auto bp = test_blueprints();
    const auto corpus = generate_dataset(small_config(), bp, 50, 0);
    std::map<DomainKind, int> counts;
    for (const auto& p : corpus.benign) counts[p.domain]++;
    for (int d = 0; d < kDomainCount; ++d)
        CHECK(counts[static_cast<DomainKind>(d)] == 10);  // equal weights, 50 payloads
    for (int d = 0; d < kDomainCount; ++d)
        CHECK(corpus.log.domain_counts[d] == 10);
}

TEST_CASE("attack kinds follow the mix quota by largest remainder") {
    const auto bp = test_blueprints();
    AttackMix mix;  // 232 / 228 / 75 / 207 / 258 over 40 mutants
    const auto corpus = generate_dataset(small_config(), bp, 30, 40, mix);
    std::map<AttackKind, int> counts;
    for (const auto& p : corpus.malicious) counts[p.attack_trace()->attack_type]++;
    // exact shares of 40: 9.28, 9.12, 3.0, 8.28, 10.32 -> floors 9,9,3,8,10
    // leave one seat, which the largest remainder (workflow, .32) takes
    CHECK(counts[AttackKind::phishing_interface] == 9);
    CHECK(counts[AttackKind::data_leakage] == 9);
    CHECK(counts[AttackKind::layout_abuse] == 3);
    CHECK(counts[AttackKind::manipulative_ui] == 8);
    CHECK(counts[AttackKind::workflow_anomaly] == 11);
}

TEST_CASE("payload ids are sequential and unique, sessions shared") {
    const auto bp = test_blueprints();
    const auto corpus = generate_dataset(small_config(), bp, 25, 10);
    std::set<std::string> ids;
    for (const auto& p : corpus.benign) ids.insert(p.payload_id);
    for (const auto& p : corpus.malicious) ids.insert(p.payload_id);
    CHECK(ids.size() == 35);
    CHECK(corpus.benign.front().payload_id == "p_000000");
    CHECK(corpus.malicious.front().payload_id == "m_000000");

    // mutants keep their source's session slot
    std::map<std::string, const UIPayload*> by_id;
    for (const auto& p : corpus.benign) by_id[p.payload_id] = &p;
    for (const auto& p : corpus.malicious) {
        const auto trace = p.attack_trace();
        const auto* src = by_id.at(trace->source_payload_id);
        CHECK(p.session_id == src->session_id);
        CHECK(p.timestamp == src->timestamp);
        CHECK(p.sequence_index == src->sequence_index);
    }
}

TEST_CASE("sessions have one to three payloads with increasing timestamps") {
    const auto bp = test_blueprints();
    auto cfg = small_config();
    const auto corpus = generate_dataset(cfg, bp, 40, 0);
    std::map<std::string, std::vector<const UIPayload*>> sessions;
    for (const auto& p : corpus.benign) sessions[p.session_id].push_back(&p);
    for (const auto& [sid, members] : sessions) {
        CHECK(members.size() >= 1);
        CHECK(members.size() <= 3);
        for (std::size_t i = 1; i < members.size(); ++i) {
            CHECK(members[i]->sequence_index == members[i - 1]->sequence_index + 1);
            CHECK(members[i]->timestamp > members[i - 1]->timestamp);
            CHECK(members[i]->timestamp - members[i - 1]->timestamp <= 30);
        }
    }
}

TEST_CASE("an empty request yields an empty corpus") {
    const auto bp = test_blueprints();
    const auto corpus = generate_dataset(small_config(), bp, 0, 0);
    CHECK(corpus.benign.empty());
    CHECK(corpus.malicious.empty());
    CHECK(corpus.log.rejection_rate == 0.0);
}

TEST_CASE("mutants without benign sources are rejected") {
    const auto bp = test_blueprints();
    CHECK_THROWS(generate_dataset(small_config(), bp, 0, 5));
    CHECK_THROWS(generate_dataset(small_config(), bp, -1, 0));
}

TEST_CASE("single-component payloads are allowed when the count range forces them") {
    const auto bp = test_blueprints();
    auto cfg = small_config();
    cfg.component_count_min = 1;
    cfg.component_count_max = 1;
    cfg.depth_min = 1;
    cfg.depth_max = 1;
    Rng rng(cfg.seed, "gen/tiny");
    const SessionMeta session{"s_0", 1700000000, 0};
    const auto p = generate_benign(DomainKind::e_commerce, rng, cfg, bp, session, "p_0");
    CHECK(p.components.size() == 1);
    CHECK(max_depth(p) == 1);
    CHECK(validate(p, PayloadLabel::benign).passed);
}

TEST_CASE("a depth-one cap still admits multi-component payloads via clamping") {
    const auto bp = test_blueprints();
    auto cfg = small_config();
    cfg.depth_min = 1;
    cfg.depth_max = 1;  // root plus direct children once clamped
    Rng rng(cfg.seed, "gen/flat");
    const SessionMeta session{"s_0", 1700000000, 0};
    const auto p = generate_benign(DomainKind::form_submission, rng, cfg, bp, session, "p_0");
    CHECK(p.components.size() >= 5);
    CHECK(max_depth(p) == 2);
    CHECK(validate(p, PayloadLabel::benign).passed);
}

TEST_CASE("the generation log accounts for every payload and stays under the cap") {
    const auto bp = test_blueprints();
    const auto cfg = small_config();
    const auto corpus = generate_dataset(cfg, bp, 50, 20);
    CHECK(corpus.log.benign_generated == 50);
    CHECK(corpus.log.malicious_generated == 20);
    CHECK(corpus.log.seed == cfg.seed);
    CHECK(corpus.log.rejection_rate <= cfg.max_rejection_rate);
    CHECK(corpus.log.rejection_lines.size() ==
          static_cast<std::size_t>(corpus.log.validation_rejections));
}
