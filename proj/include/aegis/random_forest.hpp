#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace aegis {

struct RandomForestConfig {
    int n_trees = 400;
    int features_per_split = 5;  // ceil(sqrt(18))
    // no depth limit, min samples per leaf = 1
};

struct RfNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double p1 = 0.0;  // class-weighted probability of class 1 at a leaf
};

struct RandomForestModel {
    std::vector<std::vector<RfNode>> trees;
    std::vector<double> importances;  // per-feature Gini importances, sum 1
    double class_weight0 = 1.0;       // N / (2 * N_c)
    double class_weight1 = 1.0;
};

// Bagged trees with class-weighted Gini splits. Deterministic: per-tree
// derived streams, ties broken toward the lowest feature index and lowest
// threshold. Throws on single-class input.
RandomForestModel train_random_forest(const Eigen::MatrixXd& rows,
                                      const std::vector<int>& labels,
                                      std::uint64_t seed,
                                      const RandomForestConfig& config = {});

// Mean of per-tree leaf class-1 distributions, in [0, 1].
double rf_predict(const RandomForestModel& model, const Eigen::VectorXd& row);

inline bool rf_decision(const RandomForestModel& model, const Eigen::VectorXd& row) {
    return rf_predict(model, row) >= 0.5;
}

const std::vector<double>& rf_importances(const RandomForestModel& model);

nlohmann::json random_forest_to_json(const RandomForestModel& model);
RandomForestModel random_forest_from_json(const nlohmann::json& j);

}  // namespace aegis
