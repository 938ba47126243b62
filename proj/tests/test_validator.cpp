#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aegis/payload.hpp"
#include "aegis/validator.hpp"

using namespace aegis;

namespace {

UIComponent make(const std::string& id, ComponentType type, ComponentRole role,
                 const std::string& label, std::optional<std::string> parent = {}) {
    UIComponent c;
    c.component_id = id;
    c.component_type = type;
    c.role = role;
    c.label_text = label;
    c.parent_id = std::move(parent);
    if (role == ComponentRole::action) c.action = "do_something";
    if (type == ComponentType::Table) c.properties["row_count"] = std::int64_t{10};
    return c;
}

UIPayload valid_benign() {
    UIPayload p;
    p.payload_id = "p_000000";
    p.session_id = "s_00000";
    p.timestamp = 1700000000;
    p.domain = DomainKind::booking_assistant;
    p.schema_version = kSchemaVersion;
    p.metadata["label"] = "benign";
    p.components.push_back(make("c_000", ComponentType::Card, ComponentRole::container, "Trip"));
    p.components.push_back(
        make("c_001", ComponentType::Button, ComponentRole::action, "Book now", "c_000"));
    p.components.push_back(
        make("c_002", ComponentType::Label, ComponentRole::display, "Itinerary", "c_000"));
    p.bindings.push_back({"c_002", "booking_assistant.flight_ref"});
    return p;
}

}  // namespace

TEST_CASE("a well-formed benign payload passes both stages") {
    const auto r = validate(valid_benign(), PayloadLabel::benign);
    CHECK(r.passed);
    CHECK(r.stage == ValidationStage::logical);
    CHECK(r.violations.empty());
}

TEST_CASE("duplicate component ids fail the schema stage") {
    auto p = valid_benign();
    p.components.push_back(
        make("c_001", ComponentType::Label, ComponentRole::display, "Dup", "c_000"));
    const auto r = validate(p, PayloadLabel::benign);
    CHECK_FALSE(r.passed);
    CHECK(r.stage == ValidationStage::schema);
    CHECK(r.has(violation::DUPLICATE_ID));
}

TEST_CASE("all components parented means no root") {
    auto p = valid_benign();
    p.components[0].parent_id = "c_001";  // root now points at its child
    const auto r = validate(p, PayloadLabel::benign);
    CHECK_FALSE(r.passed);
    CHECK(r.has(violation::NO_ROOT));
}

TEST_CASE("two parentless components mean multiple roots") {
    auto p = valid_benign();
    p.components.push_back(
        make("c_003", ComponentType::Card, ComponentRole::container, "Second root"));
    const auto r = validate(p, PayloadLabel::benign);
    CHECK_FALSE(r.passed);
    CHECK(r.has(violation::MULTIPLE_ROOTS));
}

TEST_CASE("unknown parent id is reported") {
    auto p = valid_benign();
    p.components[1].parent_id = "c_999";
    const auto r = validate(p, PayloadLabel::benign);
    CHECK_FALSE(r.passed);
    CHECK(r.has(violation::PARENT_UNRESOLVED));
}

TEST_CASE("non-container parent is reported") {
    auto p = valid_benign();
    p.components[2].parent_id = "c_001";  // Button is not a container
    const auto r = validate(p, PayloadLabel::benign);
    CHECK_FALSE(r.passed);
    CHECK(r.has(violation::PARENT_NOT_CONTAINER));
}

TEST_CASE("a parent cycle breaks the tree") {
    auto p = valid_benign();
    // two containers pointing at each other, detached from the root
    auto a = make("c_010", ComponentType::Card, ComponentRole::container, "A", "c_011");
    auto b = make("c_011", ComponentType::Card, ComponentRole::container, "B", "c_010");
    p.components.push_back(a);
    p.components.push_back(b);
    const auto r = validate(p, PayloadLabel::benign);
    CHECK_FALSE(r.passed);
    CHECK(r.has(violation::NOT_A_TREE));
}

TEST_CASE("binding to an unknown component is reported") {
    auto p = valid_benign();
    p.bindings.push_back({"c_999", "booking_assistant.seat_map"});
    const auto r = validate(p, PayloadLabel::benign);
    CHECK_FALSE(r.passed);
    CHECK(r.has(violation::BINDING_UNRESOLVED));
}

TEST_CASE("binding to an action component is a role violation") {
    auto p = valid_benign();
    p.bindings.push_back({"c_001", "booking_assistant.seat_map"});
    const auto r = validate(p, PayloadLabel::benign);
    CHECK_FALSE(r.passed);
    CHECK(r.has(violation::BINDING_BAD_ROLE));
}

TEST_CASE("action field must be present exactly on action roles") {
    auto p = valid_benign();
    p.components[2].action = "sneaky_action";  // display role with an action
    auto r = validate(p, PayloadLabel::benign);
    CHECK_FALSE(r.passed);
    CHECK(r.has(violation::ACTION_ROLE_MISMATCH));

    p = valid_benign();
    p.components[1].action.reset();  // action role without an action
    r = validate(p, PayloadLabel::benign);
    CHECK_FALSE(r.passed);
    CHECK(r.has(violation::ACTION_ROLE_MISMATCH));
}

TEST_CASE("malicious label requires an attack trace and vice versa") {
    auto p = valid_benign();
    auto r = validate(p, PayloadLabel::malicious);
    CHECK_FALSE(r.passed);
    CHECK(r.has(violation::LABEL_TRACE_MISMATCH));

    AttackTrace t;
    t.attack_type = AttackKind::manipulative_ui;
    t.source_payload_id = "p_000000";
    t.modified_component_ids = {"c_001"};
    t.severity = Severity::high;
    p.set_attack_trace(t);
    r = validate(p, PayloadLabel::malicious);
    CHECK(r.passed);

    r = validate(p, PayloadLabel::benign);  // benign payload carrying a trace
    CHECK_FALSE(r.passed);
    CHECK(r.has(violation::LABEL_TRACE_MISMATCH));
}

TEST_CASE("benign depth cap is 5 and the malicious cap is 14") {
    auto p = valid_benign();
    std::string parent = "c_000";
    for (int i = 0; i < 5; ++i) {  // chain pushes max depth to 6
        const std::string id = "d_" + std::to_string(i);
        p.components.push_back(
            make(id, ComponentType::Card, ComponentRole::container, "Deep", parent));
        parent = id;
    }
    CHECK(max_depth(p) == 6);
    auto r = validate(p, PayloadLabel::benign);
    CHECK_FALSE(r.passed);
    CHECK(r.stage == ValidationStage::logical);
    CHECK(r.has(violation::DEPTH_OUT_OF_BOUNDS));

    AttackTrace t;
    t.attack_type = AttackKind::layout_abuse;
    t.source_payload_id = "p_000000";
    t.severity = Severity::low;
    p.set_attack_trace(t);
    r = validate(p, PayloadLabel::malicious);  // 6 <= 14: fine for malicious
    CHECK(r.passed);
}

TEST_CASE("a Table without row_count fails the logical stage") {
    auto p = valid_benign();
    auto t = make("c_003", ComponentType::Table, ComponentRole::display, "Data", "c_000");
    t.properties.erase("row_count");
    p.components.push_back(t);
    const auto r = validate(p, PayloadLabel::benign);
    CHECK_FALSE(r.passed);
    CHECK(r.stage == ValidationStage::logical);
    CHECK(r.has(violation::TABLE_MISSING_ROW_COUNT));
}

TEST_CASE("a Form without an input descendant fails the logical stage") {
    auto p = valid_benign();
    p.components.push_back(
        make("c_003", ComponentType::Form, ComponentRole::container, "Empty form", "c_000"));
    auto r = validate(p, PayloadLabel::benign);
    CHECK_FALSE(r.passed);
    CHECK(r.has(violation::FORM_WITHOUT_INPUT));

    p.components.push_back(
        make("c_004", ComponentType::TextField, ComponentRole::input, "Name", "c_003"));
    r = validate(p, PayloadLabel::benign);
    CHECK(r.passed);
}

TEST_CASE("logical checks only run when the schema stage is clean") {
    auto p = valid_benign();
    p.components[1].parent_id = "c_999";          // schema violation
    auto deep = valid_benign().components[0];     // plus a would-be logical issue
    auto t = make("c_004", ComponentType::Table, ComponentRole::display, "Data", "c_000");
    t.properties.erase("row_count");
    p.components.push_back(t);
    const auto r = validate(p, PayloadLabel::benign);
    CHECK_FALSE(r.passed);
    CHECK(r.stage == ValidationStage::schema);
    CHECK_FALSE(r.has(violation::TABLE_MISSING_ROW_COUNT));
    (void)deep;
}

TEST_CASE("max_depth conventions") {
    UIPayload empty;
    CHECK(max_depth(empty) == 0);

    UIPayload single;
    single.components.push_back(
        make("c_000", ComponentType::Card, ComponentRole::container, "Root"));
    CHECK(max_depth(single) == 1);

    CHECK(max_depth(valid_benign()) == 2);
}
