#include "aegis/payload.hpp"

#include <array>
#include <sstream>

namespace aegis {
namespace {

const std::array<const char*, 5> kDomainNames = {
    "booking_assistant", "e_commerce", "analytics_dashboard", "form_submission",
    "workflow_approval"};
const std::array<const char*, 10> kComponentTypeNames = {
    "Button", "TextField", "Card", "Table", "Form", "Modal", "Dropdown",
    "Checkbox", "Label", "Chart"};
const std::array<const char*, 4> kRoleNames = {"container", "action", "input", "display"};
const std::array<const char*, 5> kAttackNames = {
    "phishing_interface", "data_leakage", "layout_abuse", "manipulative_ui",
    "workflow_anomaly"};
const std::array<const char*, 3> kSeverityNames = {"low", "medium", "high"};

template <typename Enum, std::size_t N>
Enum enum_from_string(const std::array<const char*, N>& names, const std::string& s,
                      const char* type_name) {
    for (std::size_t i = 0; i < N; ++i) {
        if (s == names[i]) return static_cast<Enum>(i);
    }
    throw ParseError(std::string("unknown ") + type_name + " value: \"" + s + "\"");
}

nlohmann::json property_to_json(const PropertyValue& v) {
    return std::visit([](const auto& x) { return nlohmann::json(x); }, v);
}

PropertyValue property_from_json(const nlohmann::json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::string:
            return j.get<std::string>();
        case nlohmann::json::value_t::number_integer:
        case nlohmann::json::value_t::number_unsigned:
            return j.get<std::int64_t>();
        case nlohmann::json::value_t::number_float:
            return j.get<double>();
        case nlohmann::json::value_t::boolean:
            return j.get<bool>();
        default:
            throw ParseError("property values must be scalar (string/integer/float/boolean)");
    }
}

const nlohmann::json& require_field(const nlohmann::json& j, const char* key,
                                    const char* context) {
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string(context) + ": missing field \"" + key + "\"");
    return *it;
}

}  // namespace

std::string to_string(DomainKind d) { return kDomainNames[static_cast<int>(d)]; }
std::string to_string(ComponentType t) { return kComponentTypeNames[static_cast<int>(t)]; }
std::string to_string(ComponentRole r) { return kRoleNames[static_cast<int>(r)]; }
std::string to_string(AttackKind k) { return kAttackNames[static_cast<int>(k)]; }
std::string to_string(Severity s) { return kSeverityNames[static_cast<int>(s)]; }

DomainKind domain_from_string(const std::string& s) {
    return enum_from_string<DomainKind>(kDomainNames, s, "DomainKind");
}
ComponentType component_type_from_string(const std::string& s) {
    return enum_from_string<ComponentType>(kComponentTypeNames, s, "ComponentType");
}
ComponentRole role_from_string(const std::string& s) {
    return enum_from_string<ComponentRole>(kRoleNames, s, "ComponentRole");
}
AttackKind attack_kind_from_string(const std::string& s) {
    return enum_from_string<AttackKind>(kAttackNames, s, "AttackKind");
}
Severity severity_from_string(const std::string& s) {
    return enum_from_string<Severity>(kSeverityNames, s, "Severity");
}

std::optional<AttackTrace> UIPayload::attack_trace() const {
    auto it = metadata.find("attack_trace");
    if (it == metadata.end()) return std::nullopt;
    const nlohmann::json& t = *it;
    AttackTrace trace;
    trace.attack_type = attack_kind_from_string(t.at("attack_type").get<std::string>());
    trace.source_payload_id = t.at("source_payload_id").get<std::string>();
    trace.injected_component_ids = t.at("injected_component_ids").get<std::vector<std::string>>();
    trace.modified_component_ids = t.at("modified_component_ids").get<std::vector<std::string>>();
    trace.severity = severity_from_string(t.at("severity").get<std::string>());
    return trace;
}

void UIPayload::set_attack_trace(const AttackTrace& trace) {
    nlohmann::json t;
    t["attack_type"] = to_string(trace.attack_type);
    t["source_payload_id"] = trace.source_payload_id;
    t["injected_component_ids"] = trace.injected_component_ids;
    t["modified_component_ids"] = trace.modified_component_ids;
    t["severity"] = to_string(trace.severity);
    metadata["attack_trace"] = std::move(t);
}

const UIComponent* UIPayload::find_component(const std::string& id) const {
    for (const auto& c : components)
        if (c.component_id == id) return &c;
    return nullptr;
}

bool UIPayload::operator==(const UIPayload& other) const {
    return payload_id == other.payload_id && session_id == other.session_id &&
           timestamp == other.timestamp && domain == other.domain &&
           schema_version == other.schema_version && components == other.components &&
           bindings == other.bindings && sequence_index == other.sequence_index &&
           metadata == other.metadata;
}

nlohmann::json payload_to_json(const UIPayload& p) {
    nlohmann::json j;
    j["payload_id"] = p.payload_id;
    j["session_id"] = p.session_id;
    j["timestamp"] = p.timestamp;
    j["domain"] = to_string(p.domain);
    j["schema_version"] = p.schema_version;
    j["sequence_index"] = p.sequence_index;
    j["metadata"] = p.metadata;

    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : p.components) {
        nlohmann::json cj;
        cj["component_id"] = c.component_id;
        cj["component_type"] = to_string(c.component_type);
        cj["role"] = to_string(c.role);
        cj["label_text"] = c.label_text;
        nlohmann::json props = nlohmann::json::object();
        for (const auto& [k, v] : c.properties) props[k] = property_to_json(v);
        cj["properties"] = std::move(props);
        if (c.action) cj["action"] = *c.action;
        if (c.parent_id) cj["parent_id"] = *c.parent_id;
        comps.push_back(std::move(cj));
    }
    j["components"] = std::move(comps);

    nlohmann::json binds = nlohmann::json::array();
    for (const auto& b : p.bindings) {
        binds.push_back({{"component_id", b.component_id}, {"source_path", b.source_path}});
    }
    j["bindings"] = std::move(binds);
    return j;
}

UIPayload payload_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("payload: top level must be a JSON object");

    static const std::array<const char*, 9> kRequired = {
        "payload_id", "session_id", "timestamp", "domain", "schema_version",
        "components", "bindings", "sequence_index", "metadata"};
    std::string missing;
    for (const char* f : kRequired) {
        if (!j.contains(f)) {
            if (!missing.empty()) missing += ", ";
            missing += f;
        }
    }
    if (!missing.empty())
        throw ParseError("payload: missing required top-level fields: " + missing);

    UIPayload p;
    p.payload_id = j.at("payload_id").get<std::string>();
    p.session_id = j.at("session_id").get<std::string>();
    if (!j.at("timestamp").is_number_integer())
        throw ParseError("payload: \"timestamp\" must be an integer");
    p.timestamp = j.at("timestamp").get<std::int64_t>();
    p.domain = domain_from_string(j.at("domain").get<std::string>());
    p.schema_version = j.at("schema_version").get<std::string>();
    if (!j.at("sequence_index").is_number_integer())
        throw ParseError("payload: \"sequence_index\" must be an integer");
    p.sequence_index = j.at("sequence_index").get<std::int64_t>();
    if (!j.at("metadata").is_object())
        throw ParseError("payload: \"metadata\" must be an object");
    p.metadata = j.at("metadata");

    if (!j.at("components").is_array())
        throw ParseError("payload: \"components\" must be an array");
    for (const auto& cj : j.at("components")) {
        UIComponent c;
        c.component_id = require_field(cj, "component_id", "component").get<std::string>();
        c.component_type = component_type_from_string(
            require_field(cj, "component_type", "component").get<std::string>());
        c.role = role_from_string(require_field(cj, "role", "component").get<std::string>());
        c.label_text = require_field(cj, "label_text", "component").get<std::string>();
        for (const auto& [k, v] : require_field(cj, "properties", "component").items())
            c.properties[k] = property_from_json(v);
        if (cj.contains("action")) c.action = cj.at("action").get<std::string>();
        if (cj.contains("parent_id")) c.parent_id = cj.at("parent_id").get<std::string>();
        p.components.push_back(std::move(c));
    }

    if (!j.at("bindings").is_array())
        throw ParseError("payload: \"bindings\" must be an array");
    for (const auto& bj : j.at("bindings")) {
        DataBinding b;
        b.component_id = require_field(bj, "component_id", "binding").get<std::string>();
        b.source_path = require_field(bj, "source_path", "binding").get<std::string>();
        p.bindings.push_back(std::move(b));
    }
    return p;
}

std::string canonical_serialize(const UIPayload& payload) {
    // nlohmann::json objects keep keys sorted; dump() emits no whitespace and
    // renders integers without exponent, which is exactly the canonical form.
    return payload_to_json(payload).dump();
}

UIPayload parse_payload(const std::string& bytes) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        std::ostringstream msg;
        msg << "malformed JSON at byte " << e.byte << ": " << e.what();
        throw ParseError(msg.str());
    }
    return payload_from_json(j);
}

}  // namespace aegis
