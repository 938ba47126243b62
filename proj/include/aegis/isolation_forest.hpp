#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace aegis {

struct IsolationForestConfig {
    int n_trees = 300;
    int subsample = 256;  // capped at the training-set size
};

struct IsolationTreeNode {
    int feature = -1;  // -1 marks an external node
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int size = 0;  // samples that reached an external node
};

struct IsolationForestModel {
    std::vector<std::vector<IsolationTreeNode>> trees;
    int subsample = 0;
    double normalizer = 0.0;  // c(subsample)
};

// Average unsuccessful-search path length adjustment c(n).
double average_path_length(int n);

IsolationForestModel train_isolation_forest(const Eigen::MatrixXd& rows,
                                            std::uint64_t seed,
                                            const IsolationForestConfig& config = {});

// Expected isolation depth E[h(x)] across the forest.
double if_path_length(const IsolationForestModel& model, const Eigen::VectorXd& row);

// Anomaly score s(x) = 2^(-E[h(x)]/c(psi)), strictly inside (0, 1).
double if_score(const IsolationForestModel& model, const Eigen::VectorXd& row);

// Binary rule: anomalous iff s >= 0.5 (the original algorithm's convention).
inline bool if_decision(const IsolationForestModel& model, const Eigen::VectorXd& row) {
    return if_score(model, row) >= 0.5;
}

nlohmann::json isolation_forest_to_json(const IsolationForestModel& model);
IsolationForestModel isolation_forest_from_json(const nlohmann::json& j);

}  // namespace aegis
