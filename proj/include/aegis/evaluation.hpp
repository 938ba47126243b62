#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "aegis/features.hpp"
#include "aegis/random_forest.hpp"

namespace aegis {

struct SplitAssignment {
    std::vector<bool> in_test;  // aligned with the input id order
    int n_train = 0;
    int n_test = 0;
};

// Deterministic stratified split: per-class shuffle keyed on (seed, sorted
// payload ids), floor(fraction * class size) test rows per class.
SplitAssignment stratified_split(const std::vector<std::string>& ids,
                                 const std::vector<int>& labels, std::uint64_t seed,
                                 double test_fraction = 0.2);

struct ConfusionMatrix {
    long tn = 0, fp = 0, fn = 0, tp = 0;
    long total() const { return tn + fp + fn + tp; }
};

struct BinaryMetrics {
    ConfusionMatrix cm;
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

BinaryMetrics binary_metrics(const std::vector<int>& y_true,
                             const std::vector<int>& y_pred);

// Mann-Whitney rank statistic with average ranks on ties; equals trapezoidal
// ROC integration. Requires both classes present.
double roc_auc(const std::vector<int>& y_true, const std::vector<double>& scores);

struct RocPoint {
    double threshold = 0.0;
    double fpr = 0.0;
    double tpr = 0.0;
};

std::vector<RocPoint> roc_curve(const std::vector<int>& y_true,
                                const std::vector<double>& scores);

// Recall per attack family over malicious test rows; families absent from the
// test set map to nullopt.
std::map<std::string, std::optional<double>> per_attack_breakdown(
    const std::vector<FeatureVector>& test_rows, const std::vector<int>& predictions);

struct AblationRow {
    std::string subset;
    int n_features = 0;
    double f1 = 0.0;
    double auc = 0.0;
    bool degenerate = false;  // no signal in the subset
};

// Retrains the random forest on each feature-column subset over the same
// split and scores the test rows.
std::vector<AblationRow> ablation(const Eigen::MatrixXd& train_x,
                                  const std::vector<int>& train_y,
                                  const Eigen::MatrixXd& test_x,
                                  const std::vector<int>& test_y, std::uint64_t seed,
                                  const RandomForestConfig& rf_config,
                                  const std::vector<std::pair<std::string, std::vector<int>>>& subsets);

}  // namespace aegis
