#include "aegis/pipeline.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <yaml-cpp/yaml.h>

#include "aegis/evaluation.hpp"
#include "aegis/features.hpp"
#include "aegis/scaler.hpp"
#include "aegis/svg.hpp"
#include "aegis/validator.hpp"

namespace fs = std::filesystem;

namespace aegis {
namespace {

void write_file(const fs::path& path, const std::string& bytes) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << bytes;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path out_root(const PipelineConfig& c) { return fs::path(c.output_dir); }

// Payload files sorted by name so directory iteration order never matters.
std::vector<fs::path> sorted_json_files(const fs::path& dir) {
    std::vector<fs::path> files;
    if (!fs::exists(dir)) throw std::runtime_error("missing artifact directory: " + dir.string());
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    return files;
}

std::vector<UIPayload> load_payload_dir(const fs::path& dir) {
    std::vector<UIPayload> payloads;
    for (const auto& f : sorted_json_files(dir)) payloads.push_back(parse_payload(read_file(f)));
    return payloads;
}

struct LoadedCorpus {
    std::vector<UIPayload> benign;
    std::vector<UIPayload> malicious;
};

LoadedCorpus load_corpus(const PipelineConfig& c) {
    LoadedCorpus lc;
    lc.benign = load_payload_dir(out_root(c) / "dataset" / "benign");
    lc.malicious = load_payload_dir(out_root(c) / "dataset" / "malicious");
    return lc;
}

// Per-payload session timeline: timestamps deduplicated by sequence index, in
// sequence order (mutants share their source's slot).
std::map<std::string, std::vector<std::int64_t>> session_timelines(const LoadedCorpus& lc) {
    std::map<std::string, std::map<std::int64_t, std::int64_t>> by_session;
    auto add = [&](const std::vector<UIPayload>& ps) {
        for (const auto& p : ps) by_session[p.session_id][p.sequence_index] = p.timestamp;
    };
    add(lc.benign);
    add(lc.malicious);
    std::map<std::string, std::vector<std::int64_t>> timelines;
    for (const auto& [sid, seq] : by_session) {
        auto& v = timelines[sid];
        for (const auto& [idx, ts] : seq) v.push_back(ts);
    }
    return timelines;
}

struct FeatureTable {
    std::vector<FeatureVector> rows;
    std::vector<std::string> ids;
    std::vector<int> labels;
    Eigen::MatrixXd x;  // (n, 18)
};

FeatureTable load_feature_table(const PipelineConfig& c) {
    FeatureTable t;
    t.rows = parse_feature_csv(read_file(out_root(c) / "features.csv"));
    t.x.resize(static_cast<Eigen::Index>(t.rows.size()), kFeatureCount);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        t.ids.push_back(t.rows[i].payload_id);
        t.labels.push_back(t.rows[i].label);
        for (int j = 0; j < kFeatureCount; ++j)
            t.x(static_cast<Eigen::Index>(i), j) = t.rows[i].values[static_cast<std::size_t>(j)];
    }
    return t;
}

struct SplitTable {
    std::vector<std::size_t> train_idx;
    std::vector<std::size_t> test_idx;
};

SplitTable load_split(const PipelineConfig& c, const FeatureTable& t) {
    const auto j = nlohmann::json::parse(read_file(out_root(c) / "models" / "split.json"));
    std::set<std::string> test_ids;
    for (const auto& id : j.at("test_ids")) test_ids.insert(id.get<std::string>());
    SplitTable s;
    for (std::size_t i = 0; i < t.ids.size(); ++i)
        (test_ids.count(t.ids[i]) ? s.test_idx : s.train_idx).push_back(i);
    if (s.test_idx.size() != test_ids.size())
        throw std::runtime_error("split.json does not match features.csv");
    return s;
}

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& x, const std::vector<std::size_t>& idx) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), x.cols());
    for (std::size_t k = 0; k < idx.size(); ++k)
        out.row(static_cast<Eigen::Index>(k)) = x.row(static_cast<Eigen::Index>(idx[k]));
    return out;
}

struct ModelScores {
    std::vector<double> scores;
    std::vector<int> pred;
};

nlohmann::json metrics_json(const BinaryMetrics& m, double auc) {
    return {
        {"confusion_matrix", {{"tn", m.cm.tn}, {"fp", m.cm.fp}, {"fn", m.cm.fn}, {"tp", m.cm.tp}}},
        {"accuracy", m.accuracy},
        {"precision", m.precision},
        {"recall", m.recall},
        {"f1", m.f1},
        {"auc", auc},
    };
}

std::string roc_csv(const std::vector<RocPoint>& points) {
    std::ostringstream s;
    s.precision(17);
    s << "threshold,fpr,tpr\n";
    for (const auto& p : points) s << p.threshold << "," << p.fpr << "," << p.tpr << "\n";
    return s.str();
}

std::vector<std::pair<std::string, std::vector<int>>> ablation_subsets() {
    auto cols = [](auto arr) { return std::vector<int>(arr.begin(), arr.end()); };
    std::vector<int> all(kFeatureCount);
    for (int i = 0; i < kFeatureCount; ++i) all[static_cast<std::size_t>(i)] = i;
    return {
        {"all", all},
        {"structural", cols(kStructuralColumns)},
        {"semantic", cols(kSemanticColumns)},
        {"binding", cols(kBindingColumns)},
    };
}

const char* kModelNames[3] = {"random_forest", "autoencoder", "isolation_forest"};

}  // namespace

PipelineConfig default_pipeline_config() {
    PipelineConfig c;
    if (const char* env = std::getenv("AEGIS_OUT"); env && *env) c.output_dir = env;
    return c;
}

PipelineConfig load_pipeline_config(const std::string& yaml_path) {
    PipelineConfig c = default_pipeline_config();
    YAML::Node root = YAML::LoadFile(yaml_path);

    if (root["seed"]) c.seed = root["seed"].as<std::uint64_t>();
    if (auto n = root["counts"]) {
        if (n["benign"]) c.n_benign = n["benign"].as<int>();
        if (n["malicious"]) c.n_malicious = n["malicious"].as<int>();
    }
    if (auto g = root["generator"]) {
        if (g["component_count"]) {
            c.generator.component_count_min = g["component_count"][0].as<int>();
            c.generator.component_count_max = g["component_count"][1].as<int>();
        }
        if (g["depth"]) {
            c.generator.depth_min = g["depth"][0].as<int>();
            c.generator.depth_max = g["depth"][1].as<int>();
        }
        if (g["session_length"]) {
            c.generator.session_length_min = g["session_length"][0].as<int>();
            c.generator.session_length_max = g["session_length"][1].as<int>();
        }
        if (g["binding_probability"])
            c.generator.binding_probability = g["binding_probability"].as<double>();
        if (g["max_retries"]) c.generator.max_retries = g["max_retries"].as<int>();
        if (g["max_rejection_rate"])
            c.generator.max_rejection_rate = g["max_rejection_rate"].as<double>();
    }
    if (auto m = root["attack_mix"])
        for (int k = 0; k < kAttackKindCount; ++k) {
            const std::string name = to_string(static_cast<AttackKind>(k));
            if (m[name]) c.attack_mix.weights[k] = m[name].as<double>();
        }
    if (auto m = root["models"]) {
        if (auto f = m["isolation_forest"]) {
            if (f["n_trees"]) c.isolation_forest.n_trees = f["n_trees"].as<int>();
            if (f["subsample"]) c.isolation_forest.subsample = f["subsample"].as<int>();
        }
        if (auto a = m["autoencoder"]) {
            if (a["epochs"]) c.autoencoder.epochs = a["epochs"].as<int>();
            if (a["batch_size"]) c.autoencoder.batch_size = a["batch_size"].as<int>();
            if (a["learning_rate"]) c.autoencoder.learning_rate = a["learning_rate"].as<double>();
        }
        if (auto r = m["random_forest"]) {
            if (r["n_trees"]) c.random_forest.n_trees = r["n_trees"].as<int>();
            if (r["features_per_split"])
                c.random_forest.features_per_split = r["features_per_split"].as<int>();
        }
    }
    if (auto s = root["split"])
        if (s["test_fraction"]) c.test_fraction = s["test_fraction"].as<double>();
    if (root["output_dir"] && !std::getenv("AEGIS_OUT"))
        c.output_dir = root["output_dir"].as<std::string>();
    if (root["plots"]) c.plots = root["plots"].as<bool>();
    if (root["blueprints"]) c.blueprint_path = root["blueprints"].as<std::string>();

    if (c.n_benign < 0 || c.n_malicious < 0)
        throw std::invalid_argument("counts must be non-negative");
    if (c.test_fraction <= 0.0 || c.test_fraction >= 1.0)
        throw std::invalid_argument("split.test_fraction must be in (0, 1)");
    return c;
}

std::string pipeline_config_to_yaml(const PipelineConfig& c) {
    YAML::Emitter e;
    e << YAML::BeginMap;
    e << YAML::Key << "seed" << YAML::Value << c.seed;
    e << YAML::Key << "counts" << YAML::Value << YAML::BeginMap
      << YAML::Key << "benign" << YAML::Value << c.n_benign
      << YAML::Key << "malicious" << YAML::Value << c.n_malicious << YAML::EndMap;
    e << YAML::Key << "generator" << YAML::Value << YAML::BeginMap
      << YAML::Key << "component_count" << YAML::Value << YAML::Flow << YAML::BeginSeq
      << c.generator.component_count_min << c.generator.component_count_max << YAML::EndSeq
      << YAML::Key << "depth" << YAML::Value << YAML::Flow << YAML::BeginSeq
      << c.generator.depth_min << c.generator.depth_max << YAML::EndSeq
      << YAML::Key << "session_length" << YAML::Value << YAML::Flow << YAML::BeginSeq
      << c.generator.session_length_min << c.generator.session_length_max << YAML::EndSeq
      << YAML::Key << "binding_probability" << YAML::Value << c.generator.binding_probability
      << YAML::Key << "max_retries" << YAML::Value << c.generator.max_retries
      << YAML::Key << "max_rejection_rate" << YAML::Value << c.generator.max_rejection_rate
      << YAML::EndMap;
    e << YAML::Key << "attack_mix" << YAML::Value << YAML::BeginMap;
    for (int k = 0; k < kAttackKindCount; ++k)
        e << YAML::Key << to_string(static_cast<AttackKind>(k)) << YAML::Value
          << c.attack_mix.weights[k];
    e << YAML::EndMap;
    e << YAML::Key << "models" << YAML::Value << YAML::BeginMap
      << YAML::Key << "isolation_forest" << YAML::Value << YAML::BeginMap
      << YAML::Key << "n_trees" << YAML::Value << c.isolation_forest.n_trees
      << YAML::Key << "subsample" << YAML::Value << c.isolation_forest.subsample << YAML::EndMap
      << YAML::Key << "autoencoder" << YAML::Value << YAML::BeginMap
      << YAML::Key << "epochs" << YAML::Value << c.autoencoder.epochs
      << YAML::Key << "batch_size" << YAML::Value << c.autoencoder.batch_size
      << YAML::Key << "learning_rate" << YAML::Value << c.autoencoder.learning_rate
      << YAML::EndMap
      << YAML::Key << "random_forest" << YAML::Value << YAML::BeginMap
      << YAML::Key << "n_trees" << YAML::Value << c.random_forest.n_trees
      << YAML::Key << "features_per_split" << YAML::Value << c.random_forest.features_per_split
      << YAML::EndMap << YAML::EndMap;
    e << YAML::Key << "split" << YAML::Value << YAML::BeginMap
      << YAML::Key << "test_fraction" << YAML::Value << c.test_fraction << YAML::EndMap;
    e << YAML::Key << "output_dir" << YAML::Value << c.output_dir;
    e << YAML::Key << "plots" << YAML::Value << c.plots;
    e << YAML::Key << "blueprints" << YAML::Value << c.blueprint_path;
    e << YAML::EndMap;
    return std::string(e.c_str()) + "\n";
}

void stage_generate(const PipelineConfig& config) {
    const Blueprints bp = load_blueprints(config.blueprint_path);
    GeneratorConfig gen = config.generator;
    gen.seed = config.seed;
    const Corpus corpus =
        generate_dataset(gen, bp, config.n_benign, config.n_malicious, config.attack_mix);

    const fs::path root = out_root(config);
    for (const auto& p : corpus.benign)
        write_file(root / "dataset" / "benign" / (p.payload_id + ".json"),
                   canonical_serialize(p));
    for (const auto& p : corpus.malicious)
        write_file(root / "dataset" / "malicious" / (p.payload_id + ".json"),
                   canonical_serialize(p));

    nlohmann::json log = {
        {"seed", corpus.log.seed},
        {"benign_generated", corpus.log.benign_generated},
        {"malicious_generated", corpus.log.malicious_generated},
        {"validation_rejections", corpus.log.validation_rejections},
        {"attack_resamples", corpus.log.attack_resamples},
        {"rejection_rate", corpus.log.rejection_rate},
        {"domain_counts", nlohmann::json::object()},
        {"attack_counts", nlohmann::json::object()},
    };
    for (int d = 0; d < kDomainCount; ++d)
        log["domain_counts"][to_string(static_cast<DomainKind>(d))] = corpus.log.domain_counts[d];
    for (int k = 0; k < kAttackKindCount; ++k)
        log["attack_counts"][to_string(static_cast<AttackKind>(k))] = corpus.log.attack_counts[k];
    write_file(root / "dataset" / "generation_log.json", log.dump(2) + "\n");

    std::string rejections;
    for (const auto& line : corpus.log.rejection_lines) rejections += line + "\n";
    write_file(root / "dataset" / "rejections.jsonl", rejections);

    write_file(root / "run_config.yaml", pipeline_config_to_yaml(config));
}

void stage_validate(const PipelineConfig& config) {
    const LoadedCorpus lc = load_corpus(config);
    std::string lines;
    int failures = 0;
    auto check = [&](const std::vector<UIPayload>& ps, PayloadLabel label) {
        for (const auto& p : ps) {
            const ValidationReport r = validate(p, label);
            nlohmann::json j = {
                {"payload_id", p.payload_id},
                {"label", label == PayloadLabel::benign ? "benign" : "malicious"},
                {"passed", r.passed},
                {"violations", nlohmann::json::array()},
            };
            for (const auto& v : r.violations) {
                nlohmann::json vj = {{"code", v.code}, {"message", v.message}};
                if (v.component_id) vj["component_id"] = *v.component_id;
                j["violations"].push_back(vj);
            }
            lines += j.dump() + "\n";
            if (!r.passed) ++failures;
        }
    };
    check(lc.benign, PayloadLabel::benign);
    check(lc.malicious, PayloadLabel::malicious);
    write_file(out_root(config) / "dataset" / "validation_log.jsonl", lines);
    if (failures > 0)
        throw std::runtime_error("validation stage: " + std::to_string(failures) +
                                 " payload(s) failed; see dataset/validation_log.jsonl");
}

void stage_extract(const PipelineConfig& config) {
    const LoadedCorpus lc = load_corpus(config);
    const auto timelines = session_timelines(lc);
    const KeywordLists keywords;

    std::string csv = feature_csv_header() + "\n";
    auto emit = [&](const std::vector<UIPayload>& ps) {
        for (const auto& p : ps)
            csv += feature_csv_row(extract_features(p, timelines.at(p.session_id), keywords)) +
                   "\n";
    };
    emit(lc.benign);
    emit(lc.malicious);
    write_file(out_root(config) / "features.csv", csv);
}

void stage_train(const PipelineConfig& config) {
    const FeatureTable t = load_feature_table(config);
    const SplitAssignment split =
        stratified_split(t.ids, t.labels, config.seed, config.test_fraction);

    nlohmann::json split_json = {
        {"seed", config.seed},
        {"test_fraction", config.test_fraction},
        {"train_ids", nlohmann::json::array()},
        {"test_ids", nlohmann::json::array()},
    };
    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t i = 0; i < t.ids.size(); ++i) {
        (split.in_test[i] ? test_idx : train_idx).push_back(i);
        split_json[split.in_test[i] ? "test_ids" : "train_ids"].push_back(t.ids[i]);
    }

    const Eigen::MatrixXd train_x = take_rows(t.x, train_idx);
    const ScalerParams scaler = fit_scaler(train_x);
    const Eigen::MatrixXd train_z = transform(scaler, train_x);

    std::vector<int> train_y;
    std::vector<std::size_t> benign_rows_in_train;
    for (std::size_t k = 0; k < train_idx.size(); ++k) {
        train_y.push_back(t.labels[train_idx[k]]);
        if (t.labels[train_idx[k]] == 0) benign_rows_in_train.push_back(k);
    }
    Eigen::MatrixXd benign_z(static_cast<Eigen::Index>(benign_rows_in_train.size()),
                             train_z.cols());
    for (std::size_t k = 0; k < benign_rows_in_train.size(); ++k)
        benign_z.row(static_cast<Eigen::Index>(k)) =
            train_z.row(static_cast<Eigen::Index>(benign_rows_in_train[k]));

    const auto forest = train_isolation_forest(train_z, config.seed, config.isolation_forest);
    const auto ae = train_autoencoder(benign_z, config.seed, config.autoencoder);
    const auto rf = train_random_forest(train_z, train_y, config.seed, config.random_forest);

    const fs::path models = out_root(config) / "models";
    write_file(models / "split.json", split_json.dump(2) + "\n");
    write_file(models / "scaler.json", scaler_to_json(scaler).dump(2) + "\n");
    write_file(models / "isolation_forest.json", isolation_forest_to_json(forest).dump() + "\n");
    write_file(models / "autoencoder.json", autoencoder_to_json(ae).dump() + "\n");
    write_file(models / "random_forest.json", random_forest_to_json(rf).dump() + "\n");
}

void stage_evaluate(const PipelineConfig& config) {
    const FeatureTable t = load_feature_table(config);
    const SplitTable split = load_split(config, t);
    const fs::path models = out_root(config) / "models";
    const auto scaler = scaler_from_json(nlohmann::json::parse(read_file(models / "scaler.json")));
    const auto forest = isolation_forest_from_json(
        nlohmann::json::parse(read_file(models / "isolation_forest.json")));
    const auto ae =
        autoencoder_from_json(nlohmann::json::parse(read_file(models / "autoencoder.json")));
    const auto rf = random_forest_from_json(
        nlohmann::json::parse(read_file(models / "random_forest.json")));

    const Eigen::MatrixXd test_z = transform(scaler, take_rows(t.x, split.test_idx));
    std::vector<int> test_y;
    std::vector<FeatureVector> test_rows;
    for (std::size_t i : split.test_idx) {
        test_y.push_back(t.labels[i]);
        test_rows.push_back(t.rows[i]);
    }

    std::map<std::string, ModelScores> by_model;
    for (Eigen::Index i = 0; i < test_z.rows(); ++i) {
        const Eigen::VectorXd row = test_z.row(i);
        const double s_rf = rf_predict(rf, row);
        const double s_ae = ae_score(ae, row);
        const double s_if = if_score(forest, row);
        by_model["random_forest"].scores.push_back(s_rf);
        by_model["random_forest"].pred.push_back(s_rf >= 0.5 ? 1 : 0);
        by_model["autoencoder"].scores.push_back(s_ae);
        by_model["autoencoder"].pred.push_back(s_ae >= ae.threshold ? 1 : 0);
        by_model["isolation_forest"].scores.push_back(s_if);
        by_model["isolation_forest"].pred.push_back(s_if >= 0.5 ? 1 : 0);
    }

    const fs::path reports = out_root(config) / "reports";
    nlohmann::json metrics = {
        {"n_test", static_cast<int>(test_y.size())},
        {"models", nlohmann::json::object()},
        {"per_attack_recall", nlohmann::json::object()},
        {"importances", nlohmann::json::object()},
    };
    nlohmann::json per_attack_all = nlohmann::json::object();
    for (const char* name : kModelNames) {
        const ModelScores& ms = by_model.at(name);
        const BinaryMetrics m = binary_metrics(test_y, ms.pred);
        const double auc = roc_auc(test_y, ms.scores);
        metrics["models"][name] = metrics_json(m, auc);
        write_file(reports / ("cm_" + std::string(name) + ".json"),
                   metrics["models"][name]["confusion_matrix"].dump(2) + "\n");
        write_file(reports / ("roc_" + std::string(name) + ".csv"),
                   roc_csv(roc_curve(test_y, ms.scores)));

        nlohmann::json pa = nlohmann::json::object();
        for (const auto& [family, recall] : per_attack_breakdown(test_rows, ms.pred))
            pa[family] = recall ? nlohmann::json(*recall) : nlohmann::json(nullptr);
        per_attack_all[name] = pa;
    }
    metrics["per_attack_recall"] = per_attack_all;
    write_file(reports / "per-attack.json", per_attack_all.dump(2) + "\n");

    std::string imp_csv = "feature,importance\n";
    for (int j = 0; j < kFeatureCount; ++j) {
        metrics["importances"][kFeatureNames[static_cast<std::size_t>(j)]] =
            rf.importances[static_cast<std::size_t>(j)];
        std::ostringstream v;
        v.precision(17);
        v << rf.importances[static_cast<std::size_t>(j)];
        imp_csv += std::string(kFeatureNames[static_cast<std::size_t>(j)]) + "," + v.str() + "\n";
    }
    write_file(reports / "importances.csv", imp_csv);
    write_file(reports / "metrics.json", metrics.dump(2) + "\n");
}

void stage_ablate(const PipelineConfig& config) {
    const FeatureTable t = load_feature_table(config);
    const SplitTable split = load_split(config, t);
    const auto scaler = scaler_from_json(
        nlohmann::json::parse(read_file(out_root(config) / "models" / "scaler.json")));

    const Eigen::MatrixXd train_z = transform(scaler, take_rows(t.x, split.train_idx));
    const Eigen::MatrixXd test_z = transform(scaler, take_rows(t.x, split.test_idx));
    std::vector<int> train_y, test_y;
    for (std::size_t i : split.train_idx) train_y.push_back(t.labels[i]);
    for (std::size_t i : split.test_idx) test_y.push_back(t.labels[i]);

    const auto rows = ablation(train_z, train_y, test_z, test_y, config.seed,
                               config.random_forest, ablation_subsets());
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows)
        j.push_back({{"subset", r.subset},
                     {"n_features", r.n_features},
                     {"f1", r.f1},
                     {"auc", r.auc},
                     {"degenerate", r.degenerate}});
    write_file(out_root(config) / "reports" / "ablation.json", j.dump(2) + "\n");
}

void stage_report(const PipelineConfig& config) {
    const fs::path reports = out_root(config) / "reports";
    const auto metrics = nlohmann::json::parse(read_file(reports / "metrics.json"));
    const auto ablation_rows = nlohmann::json::parse(read_file(reports / "ablation.json"));

    std::ostringstream summary;
    summary << "test rows: " << metrics.at("n_test").get<int>() << "\n";
    for (const char* name : kModelNames) {
        const auto& m = metrics.at("models").at(name);
        summary << name << ": accuracy=" << m.at("accuracy").get<double>()
                << " precision=" << m.at("precision").get<double>()
                << " recall=" << m.at("recall").get<double>()
                << " f1=" << m.at("f1").get<double>() << " auc=" << m.at("auc").get<double>()
                << "\n";
    }
    summary << "ablation (f1):";
    for (const auto& r : ablation_rows)
        summary << " " << r.at("subset").get<std::string>() << "=" << r.at("f1").get<double>();
    summary << "\n";
    write_file(reports / "summary.txt", summary.str());
    std::cout << summary.str();

    if (!config.plots) return;
    for (const char* name : kModelNames) {
        const auto& m = metrics.at("models").at(name);
        const auto cm_j = m.at("confusion_matrix");
        ConfusionMatrix cm{cm_j.at("tn").get<long>(), cm_j.at("fp").get<long>(),
                           cm_j.at("fn").get<long>(), cm_j.at("tp").get<long>()};

        std::vector<RocPoint> points;
        std::istringstream roc(read_file(reports / ("roc_" + std::string(name) + ".csv")));
        std::string line;
        std::getline(roc, line);  // header
        while (std::getline(roc, line)) {
            if (line.empty()) continue;
            RocPoint p;
            std::istringstream ls(line);
            std::string cell;
            std::getline(ls, cell, ',');
            p.threshold = std::stod(cell);
            std::getline(ls, cell, ',');
            p.fpr = std::stod(cell);
            std::getline(ls, cell, ',');
            p.tpr = std::stod(cell);
            points.push_back(p);
        }
        write_file(reports / ("roc_" + std::string(name) + ".svg"),
                   svg_roc_curve(points, std::string("ROC - ") + name,
                                 m.at("auc").get<double>()));
        write_file(reports / ("cm_" + std::string(name) + ".svg"),
                   svg_confusion_matrix(cm, std::string("Confusion matrix - ") + name));
    }
    std::vector<std::string> names(kFeatureNames.begin(), kFeatureNames.end());
    std::vector<double> values;
    for (const auto& n : names) values.push_back(metrics.at("importances").at(n).get<double>());
    write_file(reports / "importances.svg",
               svg_importance_bars(names, values, "Random forest feature importances"));
}

void run_pipeline(const PipelineConfig& config) {
    stage_generate(config);
    stage_validate(config);
    stage_extract(config);
    stage_train(config);
    stage_evaluate(config);
    stage_ablate(config);
    stage_report(config);
}

}  // namespace aegis
