#include "aegis/scaler.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace aegis {

ScalerParams fit_scaler(const Eigen::MatrixXd& train_rows) {
    if (train_rows.rows() == 0) throw std::invalid_argument("fit_scaler: empty input");
    ScalerParams p;
    p.mean = train_rows.colwise().mean();
    const auto n = static_cast<double>(train_rows.rows());
    Eigen::MatrixXd centered = train_rows.rowwise() - p.mean.transpose();
    p.std = (centered.array().square().colwise().sum() / n).sqrt();
    for (Eigen::Index i = 0; i < p.std.size(); ++i)
        if (p.std(i) == 0.0) p.std(i) = 1.0;
    return p;
}

Eigen::MatrixXd transform(const ScalerParams& params, const Eigen::MatrixXd& rows) {
    Eigen::MatrixXd out = rows.rowwise() - params.mean.transpose();
    out.array().rowwise() /= params.std.transpose().array();
    return out;
}

nlohmann::json scaler_to_json(const ScalerParams& params) {
    nlohmann::json j;
    j["format"] = "aegis-scaler-v1";
    j["mean"] = std::vector<double>(params.mean.data(), params.mean.data() + params.mean.size());
    j["std"] = std::vector<double>(params.std.data(), params.std.data() + params.std.size());
    return j;
}

ScalerParams scaler_from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "aegis-scaler-v1")
        throw std::runtime_error("scaler_from_json: unknown format");
    const auto mean = j.at("mean").get<std::vector<double>>();
    const auto std_ = j.at("std").get<std::vector<double>>();
    ScalerParams p;
    p.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), static_cast<Eigen::Index>(mean.size()));
    p.std = Eigen::Map<const Eigen::VectorXd>(std_.data(), static_cast<Eigen::Index>(std_.size()));
    return p;
}

}  // namespace aegis
