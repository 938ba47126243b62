#pragma once

#include <Eigen/Dense>
#include <json.hpp>

namespace aegis {

// Z-score scaling fitted on training rows only; a zero standard deviation is
// replaced by 1 so constant columns transform to zeros.
struct ScalerParams {
    Eigen::VectorXd mean;
    Eigen::VectorXd std;
};

ScalerParams fit_scaler(const Eigen::MatrixXd& train_rows);
Eigen::MatrixXd transform(const ScalerParams& params, const Eigen::MatrixXd& rows);

nlohmann::json scaler_to_json(const ScalerParams& params);
ScalerParams scaler_from_json(const nlohmann::json& j);

}  // namespace aegis
