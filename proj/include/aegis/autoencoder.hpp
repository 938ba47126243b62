#pragma once

#include <cstdint>

#include <Eigen/Dense>
#include <json.hpp>

namespace aegis {

// Small reconstruction network, 18 -> 16 -> 8 -> 16 -> 18, ReLU on hidden
// layers and a linear output. Trained on scaler-transformed benign rows only;
// the decision threshold is the 95th percentile of benign training
// reconstruction errors.
struct AutoencoderModel {
    Eigen::MatrixXd W1, W2, W3, W4;  // (out, in)
    Eigen::VectorXd b1, b2, b3, b4;
    double threshold = 0.0;
};

struct AutoencoderGrads {
    Eigen::MatrixXd W1, W2, W3, W4;
    Eigen::VectorXd b1, b2, b3, b4;
};

struct AutoencoderConfig {
    int epochs = 80;
    int batch_size = 64;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct AutoencoderTrainLog {
    double first_epoch_loss = 0.0;
    double last_epoch_loss = 0.0;
};

// Weights uniform in +-1/sqrt(fan_in), biases zero, drawn from a derived
// stream of the seed.
AutoencoderModel init_autoencoder(std::uint64_t seed);

// Mean squared reconstruction loss over all entries of the batch
// (rows = samples).
double ae_loss(const AutoencoderModel& model, const Eigen::MatrixXd& rows);

// Analytic gradients of ae_loss with respect to every parameter.
AutoencoderGrads ae_gradients(const AutoencoderModel& model, const Eigen::MatrixXd& rows);

// Minibatch Adam for config.epochs epochs, reshuffling each epoch from a
// derived stream; sets the threshold from the trained model afterwards.
AutoencoderModel train_autoencoder(const Eigen::MatrixXd& benign_rows, std::uint64_t seed,
                                   const AutoencoderConfig& config = {},
                                   AutoencoderTrainLog* log = nullptr);

// Per-sample mean squared reconstruction error.
Eigen::VectorXd ae_scores(const AutoencoderModel& model, const Eigen::MatrixXd& rows);
double ae_score(const AutoencoderModel& model, const Eigen::VectorXd& row);

inline bool ae_decision(const AutoencoderModel& model, const Eigen::VectorXd& row) {
    return ae_score(model, row) >= model.threshold;
}

// Linear-interpolation percentile (q in [0, 1]) of an unsorted sample.
double percentile(std::vector<double> values, double q);

nlohmann::json autoencoder_to_json(const AutoencoderModel& model);
AutoencoderModel autoencoder_from_json(const nlohmann::json& j);

}  // namespace aegis
