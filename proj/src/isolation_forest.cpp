#include "aegis/isolation_forest.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "aegis/rng.hpp"

namespace aegis {
namespace {

constexpr double kEulerMascheroni = 0.5772156649015329;

struct TreeBuilder {
    const Eigen::MatrixXd& data;
    Rng& rng;
    int height_limit;
    std::vector<IsolationTreeNode> nodes;

    int build(std::vector<int>& sample, int lo, int hi, int height) {
        const int size = hi - lo;
        const int id = static_cast<int>(nodes.size());
        nodes.push_back({});
        if (size <= 1 || height >= height_limit) {
            nodes[static_cast<std::size_t>(id)].size = size;
            return id;
        }

        // candidate features with spread in this partition
        std::vector<int> candidates;
        for (Eigen::Index f = 0; f < data.cols(); ++f) {
            double mn = data(sample[static_cast<std::size_t>(lo)], f);
            double mx = mn;
            for (int i = lo + 1; i < hi; ++i) {
                const double v = data(sample[static_cast<std::size_t>(i)], f);
                mn = std::min(mn, v);
                mx = std::max(mx, v);
            }
            if (mx > mn) candidates.push_back(static_cast<int>(f));
        }
        if (candidates.empty()) {
            nodes[static_cast<std::size_t>(id)].size = size;
            return id;
        }

        const int feature = rng.choice(candidates);
        double mn = data(sample[static_cast<std::size_t>(lo)], feature);
        double mx = mn;
        for (int i = lo + 1; i < hi; ++i) {
            const double v = data(sample[static_cast<std::size_t>(i)], feature);
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        const double threshold = rng.uniform_real(mn, mx);

        // partition in place, stable on the sample ordering
        std::vector<int> left_part, right_part;
        for (int i = lo; i < hi; ++i) {
            const int s = sample[static_cast<std::size_t>(i)];
            (data(s, feature) < threshold ? left_part : right_part).push_back(s);
        }
        if (left_part.empty() || right_part.empty()) {
            nodes[static_cast<std::size_t>(id)].size = size;
            return id;
        }
        int k = lo;
        for (int s : left_part) sample[static_cast<std::size_t>(k++)] = s;
        const int mid = k;
        for (int s : right_part) sample[static_cast<std::size_t>(k++)] = s;

        nodes[static_cast<std::size_t>(id)].feature = feature;
        nodes[static_cast<std::size_t>(id)].threshold = threshold;
        const int l = build(sample, lo, mid, height + 1);
        const int r = build(sample, mid, hi, height + 1);
        nodes[static_cast<std::size_t>(id)].left = l;
        nodes[static_cast<std::size_t>(id)].right = r;
        return id;
    }
};

}  // namespace

double average_path_length(int n) {
    if (n <= 1) return 0.0;
    if (n == 2) return 1.0;
    const double h = std::log(static_cast<double>(n - 1)) + kEulerMascheroni;
    return 2.0 * h - 2.0 * static_cast<double>(n - 1) / static_cast<double>(n);
}

IsolationForestModel train_isolation_forest(const Eigen::MatrixXd& rows,
                                            std::uint64_t seed,
                                            const IsolationForestConfig& config) {
    if (rows.rows() < 2)
        throw std::invalid_argument("train_isolation_forest: need at least 2 rows");

    IsolationForestModel model;
    model.subsample = std::min<int>(config.subsample, static_cast<int>(rows.rows()));
    model.normalizer = average_path_length(model.subsample);
    const int height_limit =
        static_cast<int>(std::ceil(std::log2(static_cast<double>(model.subsample))));

    for (int t = 0; t < config.n_trees; ++t) {
        Rng rng(seed, "if/tree/" + std::to_string(t));
        std::vector<int> indices(static_cast<std::size_t>(rows.rows()));
        std::iota(indices.begin(), indices.end(), 0);
        rng.shuffle(indices);
        indices.resize(static_cast<std::size_t>(model.subsample));

        TreeBuilder builder{rows, rng, height_limit, {}};
        builder.build(indices, 0, model.subsample, 0);
        model.trees.push_back(std::move(builder.nodes));
    }
    return model;
}

double if_path_length(const IsolationForestModel& model, const Eigen::VectorXd& row) {
    double total = 0.0;
    for (const auto& tree : model.trees) {
        int id = 0;
        int depth = 0;
        while (tree[static_cast<std::size_t>(id)].feature >= 0) {
            const auto& node = tree[static_cast<std::size_t>(id)];
            id = row(node.feature) < node.threshold ? node.left : node.right;
            ++depth;
        }
        total += depth + average_path_length(tree[static_cast<std::size_t>(id)].size);
    }
    return total / static_cast<double>(model.trees.size());
}

double if_score(const IsolationForestModel& model, const Eigen::VectorXd& row) {
    return std::pow(2.0, -if_path_length(model, row) / model.normalizer);
}

nlohmann::json isolation_forest_to_json(const IsolationForestModel& model) {
    nlohmann::json j;
    j["format"] = "aegis-isolation-forest-v1";
    j["subsample"] = model.subsample;
    j["normalizer"] = model.normalizer;
    auto trees = nlohmann::json::array();
    for (const auto& tree : model.trees) {
        nlohmann::json t;
        std::vector<int> feature, left, right, size;
        std::vector<double> threshold;
        for (const auto& n : tree) {
            feature.push_back(n.feature);
            threshold.push_back(n.threshold);
            left.push_back(n.left);
            right.push_back(n.right);
            size.push_back(n.size);
        }
        t["feature"] = feature;
        t["threshold"] = threshold;
        t["left"] = left;
        t["right"] = right;
        t["size"] = size;
        trees.push_back(std::move(t));
    }
    j["trees"] = std::move(trees);
    return j;
}

IsolationForestModel isolation_forest_from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "aegis-isolation-forest-v1")
        throw std::runtime_error("isolation_forest_from_json: unknown format");
    IsolationForestModel model;
    model.subsample = j.at("subsample").get<int>();
    model.normalizer = j.at("normalizer").get<double>();
    for (const auto& t : j.at("trees")) {
        const auto feature = t.at("feature").get<std::vector<int>>();
        const auto threshold = t.at("threshold").get<std::vector<double>>();
        const auto left = t.at("left").get<std::vector<int>>();
        const auto right = t.at("right").get<std::vector<int>>();
        const auto size = t.at("size").get<std::vector<int>>();
        std::vector<IsolationTreeNode> tree(feature.size());
        for (std::size_t i = 0; i < feature.size(); ++i)
            tree[i] = {feature[i], threshold[i], left[i], right[i], size[i]};
        model.trees.push_back(std::move(tree));
    }
    return model;
}

}  // namespace aegis
