#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace aegis {

enum class DomainKind {
    booking_assistant,
    e_commerce,
    analytics_dashboard,
    form_submission,
    workflow_approval,
};
inline constexpr int kDomainCount = 5;

enum class ComponentType {
    Button, TextField, Card, Table, Form, Modal, Dropdown, Checkbox, Label, Chart,
};
inline constexpr int kComponentTypeCount = 10;

enum class ComponentRole { container, action, input, display };

enum class AttackKind {
    phishing_interface, data_leakage, layout_abuse, manipulative_ui, workflow_anomaly,
};
inline constexpr int kAttackKindCount = 5;

enum class Severity { low, medium, high };

std::string to_string(DomainKind d);
std::string to_string(ComponentType t);
std::string to_string(ComponentRole r);
std::string to_string(AttackKind k);
std::string to_string(Severity s);

DomainKind domain_from_string(const std::string& s);
ComponentType component_type_from_string(const std::string& s);
ComponentRole role_from_string(const std::string& s);
AttackKind attack_kind_from_string(const std::string& s);
Severity severity_from_string(const std::string& s);

// Scalar property value: string, integer, float or boolean.
using PropertyValue = std::variant<std::string, std::int64_t, double, bool>;

struct UIComponent {
    std::string component_id;
    ComponentType component_type = ComponentType::Label;
    ComponentRole role = ComponentRole::display;
    std::string label_text;
    std::map<std::string, PropertyValue> properties;
    std::optional<std::string> action;     // present iff role == action
    std::optional<std::string> parent_id;  // absent only for the root

    bool operator==(const UIComponent&) const = default;
};

struct DataBinding {
    std::string component_id;
    std::string source_path;

    bool operator==(const DataBinding&) const = default;
};

struct SessionMeta {
    std::string session_id;
    std::int64_t timestamp = 0;
    std::int64_t sequence_index = 0;

    bool operator==(const SessionMeta&) const = default;
};

struct AttackTrace {
    AttackKind attack_type = AttackKind::phishing_interface;
    std::string source_payload_id;
    std::vector<std::string> injected_component_ids;
    std::vector<std::string> modified_component_ids;
    Severity severity = Severity::low;

    bool operator==(const AttackTrace&) const = default;
};

struct UIPayload {
    std::string payload_id;
    std::string session_id;
    std::int64_t timestamp = 0;
    DomainKind domain = DomainKind::booking_assistant;
    std::string schema_version;
    std::vector<UIComponent> components;  // root first
    std::vector<DataBinding> bindings;
    std::int64_t sequence_index = 0;
    nlohmann::json metadata = nlohmann::json::object();

    bool is_malicious() const {
        return metadata.contains("label") && metadata["label"] == "malicious";
    }
    std::optional<AttackTrace> attack_trace() const;
    void set_attack_trace(const AttackTrace& trace);

    SessionMeta session_meta() const { return {session_id, timestamp, sequence_index}; }

    const UIComponent* find_component(const std::string& id) const;

    bool operator==(const UIPayload& other) const;
};

inline constexpr const char* kSchemaVersion = "1.0";

// Canonical byte form: UTF-8 JSON, keys sorted lexicographically, no
// insignificant whitespace, integers rendered without exponent. Serializing
// the same payload twice yields identical bytes.
std::string canonical_serialize(const UIPayload& payload);

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inverse of canonical_serialize (also accepts non-canonical JSON spellings
// of the same structure). Throws ParseError with a byte offset on malformed
// JSON and a field-naming message on schema/enum violations.
UIPayload parse_payload(const std::string& bytes);

nlohmann::json payload_to_json(const UIPayload& payload);
UIPayload payload_from_json(const nlohmann::json& j);

}  // namespace aegis
