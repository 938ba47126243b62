#include "aegis/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "aegis/rng.hpp"

namespace aegis {
namespace {

constexpr int kInputDim = 18;
constexpr int kHidden1 = 16;
constexpr int kBottleneck = 8;

Eigen::MatrixXd uniform_matrix(Rng& rng, int out, int in) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    Eigen::MatrixXd m(out, in);
    for (int i = 0; i < out; ++i)
        for (int j = 0; j < in; ++j) m(i, j) = rng.uniform_real(-bound, bound);
    return m;
}

struct ForwardPass {
    Eigen::MatrixXd x;  // input, (features, batch)
    Eigen::MatrixXd z1, a1, z2, a2, z3, a3, xhat;
};

ForwardPass forward(const AutoencoderModel& m, const Eigen::MatrixXd& rows) {
    ForwardPass f;
    f.x = rows.transpose();  // columns are samples
    f.z1 = (m.W1 * f.x).colwise() + m.b1;
    f.a1 = f.z1.cwiseMax(0.0);
    f.z2 = (m.W2 * f.a1).colwise() + m.b2;
    f.a2 = f.z2.cwiseMax(0.0);
    f.z3 = (m.W3 * f.a2).colwise() + m.b3;
    f.a3 = f.z3.cwiseMax(0.0);
    f.xhat = (m.W4 * f.a3).colwise() + m.b4;
    return f;
}

AutoencoderGrads backward(const AutoencoderModel& m, const ForwardPass& f) {
    const double scale = 1.0 / static_cast<double>(f.x.size());  // mean over dims*batch
    AutoencoderGrads g;

    Eigen::MatrixXd delta = 2.0 * scale * (f.xhat - f.x);  // dL/dxhat
    g.W4 = delta * f.a3.transpose();
    g.b4 = delta.rowwise().sum();

    delta = (m.W4.transpose() * delta).cwiseProduct(
        (f.z3.array() > 0.0).cast<double>().matrix());
    g.W3 = delta * f.a2.transpose();
    g.b3 = delta.rowwise().sum();

    delta = (m.W3.transpose() * delta).cwiseProduct(
        (f.z2.array() > 0.0).cast<double>().matrix());
    g.W2 = delta * f.a1.transpose();
    g.b2 = delta.rowwise().sum();

    delta = (m.W2.transpose() * delta).cwiseProduct(
        (f.z1.array() > 0.0).cast<double>().matrix());
    g.W1 = delta * f.x.transpose();
    g.b1 = delta.rowwise().sum();
    return g;
}

struct AdamState {
    Eigen::MatrixXd mW1, vW1, mW2, vW2, mW3, vW3, mW4, vW4;
    Eigen::VectorXd mb1, vb1, mb2, vb2, mb3, vb3, mb4, vb4;
    long step = 0;

    explicit AdamState(const AutoencoderModel& m) {
        auto zm = [](const Eigen::MatrixXd& w) { return Eigen::MatrixXd::Zero(w.rows(), w.cols()); };
        auto zv = [](const Eigen::VectorXd& b) { return Eigen::VectorXd::Zero(b.size()); };
        mW1 = zm(m.W1); vW1 = zm(m.W1); mW2 = zm(m.W2); vW2 = zm(m.W2);
        mW3 = zm(m.W3); vW3 = zm(m.W3); mW4 = zm(m.W4); vW4 = zm(m.W4);
        mb1 = zv(m.b1); vb1 = zv(m.b1); mb2 = zv(m.b2); vb2 = zv(m.b2);
        mb3 = zv(m.b3); vb3 = zv(m.b3); mb4 = zv(m.b4); vb4 = zv(m.b4);
    }
};

template <typename T>
void adam_update(T& param, T& m, T& v, const T& grad, const AutoencoderConfig& cfg,
                 double bias1, double bias2) {
    m = cfg.beta1 * m + (1.0 - cfg.beta1) * grad;
    v = cfg.beta2 * v + (1.0 - cfg.beta2) * grad.cwiseProduct(grad);
    param.array() -=
        cfg.learning_rate * (m / bias1).array() / ((v / bias2).array().sqrt() + cfg.epsilon);
}

}  // namespace

AutoencoderModel init_autoencoder(std::uint64_t seed) {
    Rng rng(seed, "ae/init");
    AutoencoderModel m;
    m.W1 = uniform_matrix(rng, kHidden1, kInputDim);
    m.b1 = Eigen::VectorXd::Zero(kHidden1);
    m.W2 = uniform_matrix(rng, kBottleneck, kHidden1);
    m.b2 = Eigen::VectorXd::Zero(kBottleneck);
    m.W3 = uniform_matrix(rng, kHidden1, kBottleneck);
    m.b3 = Eigen::VectorXd::Zero(kHidden1);
    m.W4 = uniform_matrix(rng, kInputDim, kHidden1);
    m.b4 = Eigen::VectorXd::Zero(kInputDim);
    return m;
}

double ae_loss(const AutoencoderModel& model, const Eigen::MatrixXd& rows) {
    const auto f = forward(model, rows);
    return (f.xhat - f.x).array().square().sum() / static_cast<double>(f.x.size());
}

AutoencoderGrads ae_gradients(const AutoencoderModel& model, const Eigen::MatrixXd& rows) {
    return backward(model, forward(model, rows));
}

Eigen::VectorXd ae_scores(const AutoencoderModel& model, const Eigen::MatrixXd& rows) {
    const auto f = forward(model, rows);
    return (f.xhat - f.x).array().square().colwise().mean().transpose();
}

double ae_score(const AutoencoderModel& model, const Eigen::VectorXd& row) {
    return ae_scores(model, row.transpose())(0);
}

double percentile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("percentile: empty sample");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

AutoencoderModel train_autoencoder(const Eigen::MatrixXd& benign_rows, std::uint64_t seed,
                                   const AutoencoderConfig& cfg, AutoencoderTrainLog* log) {
    if (benign_rows.rows() == 0)
        throw std::invalid_argument("train_autoencoder: empty input");

    AutoencoderModel model = init_autoencoder(seed);
    AdamState adam(model);
    Rng shuffle_rng(seed, "ae/shuffle");

    const auto n = static_cast<int>(benign_rows.rows());
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        double epoch_loss = 0.0;
        int batches = 0;
        for (int start = 0; start < n; start += cfg.batch_size) {
            const int len = std::min(cfg.batch_size, n - start);
            Eigen::MatrixXd batch(len, benign_rows.cols());
            for (int i = 0; i < len; ++i)
                batch.row(i) = benign_rows.row(order[static_cast<std::size_t>(start + i)]);

            const auto f = forward(model, batch);
            epoch_loss += (f.xhat - f.x).array().square().sum() /
                          static_cast<double>(f.x.size());
            ++batches;
            const auto g = backward(model, f);

            ++adam.step;
            const double bias1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(adam.step));
            const double bias2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(adam.step));
            adam_update(model.W1, adam.mW1, adam.vW1, g.W1, cfg, bias1, bias2);
            adam_update(model.b1, adam.mb1, adam.vb1, g.b1, cfg, bias1, bias2);
            adam_update(model.W2, adam.mW2, adam.vW2, g.W2, cfg, bias1, bias2);
            adam_update(model.b2, adam.mb2, adam.vb2, g.b2, cfg, bias1, bias2);
            adam_update(model.W3, adam.mW3, adam.vW3, g.W3, cfg, bias1, bias2);
            adam_update(model.b3, adam.mb3, adam.vb3, g.b3, cfg, bias1, bias2);
            adam_update(model.W4, adam.mW4, adam.vW4, g.W4, cfg, bias1, bias2);
            adam_update(model.b4, adam.mb4, adam.vb4, g.b4, cfg, bias1, bias2);
        }
        epoch_loss /= std::max(batches, 1);
        if (log && epoch == 0) log->first_epoch_loss = epoch_loss;
        if (log && epoch == cfg.epochs - 1) log->last_epoch_loss = epoch_loss;
    }

    const Eigen::VectorXd errors = ae_scores(model, benign_rows);
    model.threshold = percentile(
        std::vector<double>(errors.data(), errors.data() + errors.size()), 0.95);
    return model;
}

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::vector<double> row(static_cast<std::size_t>(m.cols()));
        for (Eigen::Index jx = 0; jx < m.cols(); ++jx)
            row[static_cast<std::size_t>(jx)] = m(i, jx);
        rows.push_back(row);
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
    const auto rows = j.get<std::vector<std::vector<double>>>();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.empty() ? 0 : rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t jx = 0; jx < rows[i].size(); ++jx)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(jx)) = rows[i][jx];
    return m;
}

}  // namespace

nlohmann::json autoencoder_to_json(const AutoencoderModel& model) {
    nlohmann::json j;
    j["format"] = "aegis-autoencoder-v1";
    j["W1"] = matrix_to_json(model.W1);
    j["W2"] = matrix_to_json(model.W2);
    j["W3"] = matrix_to_json(model.W3);
    j["W4"] = matrix_to_json(model.W4);
    auto vec = [](const Eigen::VectorXd& v) {
        return std::vector<double>(v.data(), v.data() + v.size());
    };
    j["b1"] = vec(model.b1);
    j["b2"] = vec(model.b2);
    j["b3"] = vec(model.b3);
    j["b4"] = vec(model.b4);
    j["threshold"] = model.threshold;
    return j;
}

AutoencoderModel autoencoder_from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "aegis-autoencoder-v1")
        throw std::runtime_error("autoencoder_from_json: unknown format");
    AutoencoderModel m;
    m.W1 = matrix_from_json(j.at("W1"));
    m.W2 = matrix_from_json(j.at("W2"));
    m.W3 = matrix_from_json(j.at("W3"));
    m.W4 = matrix_from_json(j.at("W4"));
    auto vec = [](const nlohmann::json& v) {
        const auto x = v.get<std::vector<double>>();
        return Eigen::VectorXd(
            Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size())));
    };
    m.b1 = vec(j.at("b1"));
    m.b2 = vec(j.at("b2"));
    m.b3 = vec(j.at("b3"));
    m.b4 = vec(j.at("b4"));
    m.threshold = j.at("threshold").get<double>();
    return m;
}

}  // namespace aegis
