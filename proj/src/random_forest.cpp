#include "aegis/random_forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "aegis/rng.hpp"

namespace aegis {
namespace {

struct TreeBuilder {
    const Eigen::MatrixXd& data;
    const std::vector<int>& labels;
    double w0, w1;
    int mtry;
    Rng& rng;
    std::vector<RfNode> nodes;
    std::vector<double> importance_acc;  // raw decrease per feature
    double root_weight = 0.0;

    double sample_weight(int s) const { return labels[static_cast<std::size_t>(s)] ? w1 : w0; }

    static double gini(double wa, double wb) {
        const double total = wa + wb;
        if (total <= 0) return 0.0;
        const double qa = wa / total, qb = wb / total;
        return 1.0 - qa * qa - qb * qb;
    }

    int build(std::vector<int>& sample, int lo, int hi) {
        const int id = static_cast<int>(nodes.size());
        nodes.push_back({});

        double n0 = 0, n1 = 0;
        for (int i = lo; i < hi; ++i)
            (labels[static_cast<std::size_t>(sample[static_cast<std::size_t>(i)])] ? n1 : n0) +=
                sample_weight(sample[static_cast<std::size_t>(i)]);
        const double node_weight = n0 + n1;
        const double node_gini = gini(n0, n1);

        auto make_leaf = [&]() {
            nodes[static_cast<std::size_t>(id)].p1 = node_weight > 0 ? n1 / node_weight : 0.0;
            return id;
        };
        if (n0 == 0 || n1 == 0 || hi - lo <= 1) return make_leaf();

        // draw the feature subset for this node
        std::vector<int> features(static_cast<std::size_t>(data.cols()));
        std::iota(features.begin(), features.end(), 0);
        rng.shuffle(features);
        features.resize(static_cast<std::size_t>(std::min<int>(mtry, static_cast<int>(data.cols()))));
        std::sort(features.begin(), features.end());  // deterministic tie-break order

        int best_feature = -1;
        double best_threshold = 0.0;
        double best_decrease = 0.0;

        std::vector<std::pair<double, int>> sorted;  // (value, sample)
        for (int f : features) {
            sorted.clear();
            for (int i = lo; i < hi; ++i) {
                const int s = sample[static_cast<std::size_t>(i)];
                sorted.push_back({data(s, f), s});
            }
            std::sort(sorted.begin(), sorted.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            double l0 = 0, l1 = 0;
            for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
                (labels[static_cast<std::size_t>(sorted[i].second)] ? l1 : l0) +=
                    sample_weight(sorted[i].second);
                if (sorted[i].first == sorted[i + 1].first) continue;
                const double r0 = n0 - l0, r1 = n1 - l1;
                const double lw = l0 + l1, rw = r0 + r1;
                const double decrease =
                    node_gini - (lw / node_weight) * gini(l0, l1) -
                    (rw / node_weight) * gini(r0, r1);
                const double threshold = 0.5 * (sorted[i].first + sorted[i + 1].first);
                // scan order is ascending feature then ascending threshold, so
                // keeping the first candidate among ties breaks ties toward
                // the lowest feature index and lowest threshold
                if (decrease > best_decrease + 1e-15) {
                    best_feature = f;
                    best_threshold = threshold;
                    best_decrease = decrease;
                }
            }
        }
        if (best_feature < 0) return make_leaf();

        const auto mid_it = std::stable_partition(
            sample.begin() + lo, sample.begin() + hi,
            [&](int s) { return data(s, best_feature) <= best_threshold; });
        const int mid = static_cast<int>(mid_it - sample.begin());
        if (mid == lo || mid == hi) return make_leaf();

        importance_acc[static_cast<std::size_t>(best_feature)] +=
            (node_weight / root_weight) * best_decrease;

        nodes[static_cast<std::size_t>(id)].feature = best_feature;
        nodes[static_cast<std::size_t>(id)].threshold = best_threshold;
        const int l = build(sample, lo, mid);
        const int r = build(sample, mid, hi);
        nodes[static_cast<std::size_t>(id)].left = l;
        nodes[static_cast<std::size_t>(id)].right = r;
        return id;
    }
};

}  // namespace

RandomForestModel train_random_forest(const Eigen::MatrixXd& rows,
                                      const std::vector<int>& labels,
                                      std::uint64_t seed,
                                      const RandomForestConfig& config) {
    const auto n = static_cast<int>(rows.rows());
    if (n == 0 || labels.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("train_random_forest: rows/labels mismatch");
    long n1 = std::count(labels.begin(), labels.end(), 1);
    long n0 = n - n1;
    if (n0 == 0 || n1 == 0)
        throw std::invalid_argument("train_random_forest: both classes required");

    RandomForestModel model;
    model.class_weight0 = static_cast<double>(n) / (2.0 * static_cast<double>(n0));
    model.class_weight1 = static_cast<double>(n) / (2.0 * static_cast<double>(n1));
    model.importances.assign(static_cast<std::size_t>(rows.cols()), 0.0);

    for (int t = 0; t < config.n_trees; ++t) {
        Rng rng(seed, "rf/tree/" + std::to_string(t));
        std::vector<int> sample(static_cast<std::size_t>(n));
        for (auto& s : sample) s = static_cast<int>(rng.uniform_int(0, n - 1));

        TreeBuilder builder{rows,
                            labels,
                            model.class_weight0,
                            model.class_weight1,
                            config.features_per_split,
                            rng,
                            {},
                            std::vector<double>(static_cast<std::size_t>(rows.cols()), 0.0),
                            0.0};
        double root_weight = 0.0;
        for (int s : sample) root_weight += builder.sample_weight(s);
        builder.root_weight = root_weight;
        builder.build(sample, 0, n);
        model.trees.push_back(std::move(builder.nodes));
        for (std::size_t f = 0; f < model.importances.size(); ++f)
            model.importances[f] += builder.importance_acc[f];
    }

    double total = std::accumulate(model.importances.begin(), model.importances.end(), 0.0);
    if (total > 0)
        for (auto& v : model.importances) v /= total;
    return model;
}

double rf_predict(const RandomForestModel& model, const Eigen::VectorXd& row) {
    double sum = 0.0;
    for (const auto& tree : model.trees) {
        int id = 0;
        while (tree[static_cast<std::size_t>(id)].feature >= 0) {
            const auto& node = tree[static_cast<std::size_t>(id)];
            id = row(node.feature) <= node.threshold ? node.left : node.right;
        }
        sum += tree[static_cast<std::size_t>(id)].p1;
    }
    return sum / static_cast<double>(model.trees.size());
}

const std::vector<double>& rf_importances(const RandomForestModel& model) {
    return model.importances;
}

nlohmann::json random_forest_to_json(const RandomForestModel& model) {
    nlohmann::json j;
    j["format"] = "aegis-random-forest-v1";
    j["class_weight0"] = model.class_weight0;
    j["class_weight1"] = model.class_weight1;
    j["importances"] = model.importances;
    auto trees = nlohmann::json::array();
    for (const auto& tree : model.trees) {
        nlohmann::json t;
        std::vector<int> feature, left, right;
        std::vector<double> threshold, p1;
        for (const auto& node : tree) {
            feature.push_back(node.feature);
            threshold.push_back(node.threshold);
            left.push_back(node.left);
            right.push_back(node.right);
            p1.push_back(node.p1);
        }
        t["feature"] = feature;
        t["threshold"] = threshold;
        t["left"] = left;
        t["right"] = right;
        t["p1"] = p1;
        trees.push_back(std::move(t));
    }
    j["trees"] = std::move(trees);
    return j;
}

RandomForestModel random_forest_from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "aegis-random-forest-v1")
        throw std::runtime_error("random_forest_from_json: unknown format");
    RandomForestModel model;
    model.class_weight0 = j.at("class_weight0").get<double>();
    model.class_weight1 = j.at("class_weight1").get<double>();
    model.importances = j.at("importances").get<std::vector<double>>();
    for (const auto& t : j.at("trees")) {
        const auto feature = t.at("feature").get<std::vector<int>>();
        const auto threshold = t.at("threshold").get<std::vector<double>>();
        const auto left = t.at("left").get<std::vector<int>>();
        const auto right = t.at("right").get<std::vector<int>>();
        const auto p1 = t.at("p1").get<std::vector<double>>();
        std::vector<RfNode> tree(feature.size());
        for (std::size_t i = 0; i < feature.size(); ++i)
            tree[i] = {feature[i], threshold[i], left[i], right[i], p1[i]};
        model.trees.push_back(std::move(tree));
    }
    return model;
}

}  // namespace aegis
