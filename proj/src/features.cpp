#include "aegis/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "aegis/validator.hpp"

namespace aegis {
namespace {

std::string lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

int count_occurrences(const std::string& haystack, const std::string& needle) {
    if (needle.empty()) return 0;
    int count = 0;
    std::size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        ++count;
        ++pos;
    }
    return count;
}

bool contains_any(const std::string& haystack, const std::vector<std::string>& needles) {
    for (const auto& n : needles)
        if (haystack.find(n) != std::string::npos) return true;
    return false;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

}  // namespace

double shannon_entropy(const std::string& text) {
    if (text.empty()) return 0.0;
    std::map<char, std::size_t> freq;
    for (char c : text) ++freq[c];
    const double n = static_cast<double>(text.size());
    double h = 0.0;
    for (const auto& [c, k] : freq) {
        const double p = static_cast<double>(k) / n;
        h -= p * std::log2(p);
    }
    return h;
}

double semantic_inconsistency(const UIPayload& p, const KeywordLists& kw) {
    if (p.components.empty()) return 0.0;
    int mismatches = 0;
    for (const auto& c : p.components) {
        if (c.role != ComponentRole::action || !c.action) continue;
        const bool risky =
            std::find(kw.risky_actions.begin(), kw.risky_actions.end(), *c.action) !=
            kw.risky_actions.end();
        if (!risky) continue;
        if (!contains_any(lower(c.label_text), kw.risky_label_stems)) ++mismatches;
    }
    return static_cast<double>(mismatches) / static_cast<double>(p.components.size());
}

int count_sensitive_keywords(const UIPayload& p, const KeywordLists& kw) {
    int total = 0;
    for (const auto& c : p.components) {
        const std::string text = lower(c.label_text);
        for (const auto& k : kw.sensitive_keywords) total += count_occurrences(text, k);
    }
    for (const auto& b : p.bindings) {
        const std::string path = lower(b.source_path);
        for (const auto& k : kw.sensitive_keywords) total += count_occurrences(path, k);
    }
    return total;
}

FeatureVector extract_features(const UIPayload& p,
                               const std::vector<std::int64_t>& session_timestamps,
                               const KeywordLists& kw) {
    FeatureVector fv;
    fv.payload_id = p.payload_id;
    fv.label = p.is_malicious() ? 1 : 0;
    if (const auto trace = p.attack_trace()) fv.attack_type = to_string(trace->attack_type);
    fv.domain = to_string(p.domain);

    const auto n = static_cast<double>(p.components.size());

    // --- structural ---
    fv.values[0] = n;

    std::set<ComponentType> types;
    for (const auto& c : p.components) types.insert(c.component_type);
    fv.values[1] = static_cast<double>(types.size());

    fv.values[2] = static_cast<double>(max_depth(p));

    std::map<std::string, int> child_count;
    for (const auto& c : p.components)
        if (c.parent_id) ++child_count[*c.parent_id];
    if (child_count.empty()) {
        fv.values[3] = 0.0;
    } else {
        double sum = 0;
        for (const auto& [id, k] : child_count) sum += k;
        fv.values[3] = sum / static_cast<double>(child_count.size());
    }

    fv.values[4] = n > 1 ? 2.0 * (n - 1) / (n * (n - 1)) : 0.0;

    fv.values[5] = static_cast<double>(canonical_serialize(p).size());

    int containers = 0, actions = 0;
    for (const auto& c : p.components) {
        if (c.role == ComponentRole::container) ++containers;
        if (c.role == ComponentRole::action) ++actions;
    }
    fv.values[6] = n > 0 ? containers / n : 0.0;
    fv.values[7] = n > 0 ? actions / n : 0.0;

    // --- semantic ---
    std::string concat;
    double label_chars = 0;
    for (const auto& c : p.components) {
        concat += c.label_text;
        label_chars += static_cast<double>(c.label_text.size());
    }
    fv.values[8] = n > 0 ? label_chars / n : 0.0;
    fv.values[9] = shannon_entropy(concat);
    fv.values[10] = static_cast<double>(count_sensitive_keywords(p, kw));
    fv.values[11] = semantic_inconsistency(p, kw);

    double numeric_sum = 0;
    int numeric_count = 0;
    for (const auto& c : p.components) {
        for (const auto& [key, value] : c.properties) {
            if (const auto* i = std::get_if<std::int64_t>(&value)) {
                numeric_sum += static_cast<double>(*i);
                ++numeric_count;
            } else if (const auto* d = std::get_if<double>(&value)) {
                numeric_sum += *d;
                ++numeric_count;
            }
        }
    }
    fv.values[12] = numeric_count > 0 ? numeric_sum / numeric_count : 0.0;

    // --- binding ---
    fv.values[13] = static_cast<double>(p.bindings.size());

    bool flag = false;
    for (const auto& b : p.bindings)
        if (contains_any(lower(b.source_path), kw.sensitive_binding_keywords)) flag = true;
    fv.values[14] = flag ? 1.0 : 0.0;

    if (!p.bindings.empty()) {
        std::map<std::string, std::set<std::string>> components_per_path;
        for (const auto& b : p.bindings)
            components_per_path[b.source_path].insert(b.component_id);
        int shared = 0;
        for (const auto& b : p.bindings)
            if (components_per_path[b.source_path].size() >= 2) ++shared;
        fv.values[15] = static_cast<double>(shared) / static_cast<double>(p.bindings.size());
    } else {
        fv.values[15] = 0.0;
    }

    // --- session ---
    const auto m = static_cast<double>(session_timestamps.size());
    if (session_timestamps.size() >= 2) {
        double mean = 0;
        for (auto t : session_timestamps) mean += static_cast<double>(t);
        mean /= m;
        double var = 0;
        for (auto t : session_timestamps) {
            const double d = static_cast<double>(t) - mean;
            var += d * d;
        }
        fv.values[16] = var / m;  // population variance

        double gaps = 0;
        for (std::size_t i = 1; i < session_timestamps.size(); ++i)
            gaps += static_cast<double>(session_timestamps[i] - session_timestamps[i - 1]);
        fv.values[17] = gaps / (m - 1);
    } else {
        fv.values[16] = 0.0;
        fv.values[17] = 0.0;
    }
    return fv;
}

std::string feature_csv_header() {
    std::string out = "payload_id,label,attack_type,domain";
    for (const auto* name : kFeatureNames) {
        out += ',';
        out += name;
    }
    return out;
}

std::string feature_csv_row(const FeatureVector& fv) {
    std::string out = fv.payload_id;
    out += ',';
    out += std::to_string(fv.label);
    out += ',';
    out += fv.attack_type;
    out += ',';
    out += fv.domain;
    for (double v : fv.values) {
        out += ',';
        out += format_double(v);
    }
    return out;
}

std::vector<FeatureVector> parse_feature_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("feature CSV: empty input");
    if (line != feature_csv_header())
        throw std::runtime_error("feature CSV: unexpected header");

    std::vector<FeatureVector> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (true) {
            const auto comma = line.find(',', pos);
            cells.push_back(line.substr(pos, comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (cells.size() != 4 + kFeatureCount)
            throw std::runtime_error("feature CSV: bad column count");
        FeatureVector fv;
        fv.payload_id = cells[0];
        fv.label = std::stoi(cells[1]);
        fv.attack_type = cells[2];
        fv.domain = cells[3];
        for (int i = 0; i < kFeatureCount; ++i) {
            const std::string& cell = cells[static_cast<std::size_t>(4 + i)];
            double v = 0;
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec != std::errc()) throw std::runtime_error("feature CSV: bad number");
            fv.values[static_cast<std::size_t>(i)] = v;
        }
        rows.push_back(std::move(fv));
    }
    return rows;
}

}  // namespace aegis
