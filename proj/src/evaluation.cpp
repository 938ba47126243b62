#include "aegis/evaluation.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "aegis/rng.hpp"

namespace aegis {

SplitAssignment stratified_split(const std::vector<std::string>& ids,
                                 const std::vector<int>& labels, std::uint64_t seed,
                                 double test_fraction) {
    if (ids.size() != labels.size())
        throw std::invalid_argument("stratified_split: ids/labels mismatch");
    for (int cls : {0, 1}) {
        const auto count = std::count(labels.begin(), labels.end(), cls);
        if (count < 5)
            throw std::invalid_argument("stratified_split: class " + std::to_string(cls) +
                                        " has fewer than 5 members");
    }

    SplitAssignment split;
    split.in_test.assign(ids.size(), false);

    // Assignment is a pure function of (seed, sorted payload ids): work on the
    // id-sorted order per class, shuffle on a derived stream, take the head.
    for (int cls : {0, 1}) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (labels[i] == cls) members.push_back(i);
        std::sort(members.begin(), members.end(),
                  [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
        Rng rng(seed, "split/class/" + std::to_string(cls));
        rng.shuffle(members);
        const auto n_test = static_cast<std::size_t>(
            test_fraction * static_cast<double>(members.size()));
        for (std::size_t k = 0; k < n_test; ++k) split.in_test[members[k]] = true;
    }
    for (bool t : split.in_test) (t ? split.n_test : split.n_train)++;
    return split;
}

BinaryMetrics binary_metrics(const std::vector<int>& y_true,
                             const std::vector<int>& y_pred) {
    if (y_true.size() != y_pred.size())
        throw std::invalid_argument("binary_metrics: length mismatch");
    BinaryMetrics m;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (y_true[i]) (y_pred[i] ? m.cm.tp : m.cm.fn)++;
        else (y_pred[i] ? m.cm.fp : m.cm.tn)++;
    }
    const auto total = static_cast<double>(m.cm.total());
    m.accuracy = total > 0 ? static_cast<double>(m.cm.tp + m.cm.tn) / total : 0.0;
    m.precision = (m.cm.tp + m.cm.fp) > 0
                      ? static_cast<double>(m.cm.tp) / static_cast<double>(m.cm.tp + m.cm.fp)
                      : 0.0;
    m.recall = (m.cm.tp + m.cm.fn) > 0
                   ? static_cast<double>(m.cm.tp) / static_cast<double>(m.cm.tp + m.cm.fn)
                   : 0.0;
    m.f1 = (m.precision + m.recall) > 0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

double roc_auc(const std::vector<int>& y_true, const std::vector<double>& scores) {
    if (y_true.size() != scores.size())
        throw std::invalid_argument("roc_auc: length mismatch");
    const auto n_pos = static_cast<double>(std::count(y_true.begin(), y_true.end(), 1));
    const auto n_neg = static_cast<double>(y_true.size()) - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw std::invalid_argument("roc_auc: both classes required");

    // average ranks with tie handling
    std::vector<std::size_t> order(y_true.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double avg_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k)
            if (y_true[order[k]] == 1) rank_sum_pos += avg_rank;
        i = j + 1;
    }
    return (rank_sum_pos - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

std::vector<RocPoint> roc_curve(const std::vector<int>& y_true,
                                const std::vector<double>& scores) {
    const auto n_pos = static_cast<double>(std::count(y_true.begin(), y_true.end(), 1));
    const auto n_neg = static_cast<double>(y_true.size()) - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw std::invalid_argument("roc_curve: both classes required");

    std::vector<std::size_t> order(y_true.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    std::vector<RocPoint> points;
    points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
    double tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
        for (std::size_t k = i; k <= j; ++k) (y_true[order[k]] ? tp : fp) += 1.0;
        points.push_back({scores[order[i]], fp / n_neg, tp / n_pos});
        i = j + 1;
    }
    return points;
}

std::map<std::string, std::optional<double>> per_attack_breakdown(
    const std::vector<FeatureVector>& test_rows, const std::vector<int>& predictions) {
    if (test_rows.size() != predictions.size())
        throw std::invalid_argument("per_attack_breakdown: length mismatch");

    std::map<std::string, std::pair<long, long>> counts;  // family -> (caught, total)
    for (int k = 0; k < kAttackKindCount; ++k)
        counts[to_string(static_cast<AttackKind>(k))] = {0, 0};
    for (std::size_t i = 0; i < test_rows.size(); ++i) {
        if (test_rows[i].label != 1) continue;
        auto& [caught, total] = counts[test_rows[i].attack_type];
        ++total;
        if (predictions[i]) ++caught;
    }

    std::map<std::string, std::optional<double>> out;
    for (const auto& [family, c] : counts) {
        if (c.second == 0) out[family] = std::nullopt;
        else out[family] = static_cast<double>(c.first) / static_cast<double>(c.second);
    }
    return out;
}

std::vector<AblationRow> ablation(
    const Eigen::MatrixXd& train_x, const std::vector<int>& train_y,
    const Eigen::MatrixXd& test_x, const std::vector<int>& test_y, std::uint64_t seed,
    const RandomForestConfig& rf_config,
    const std::vector<std::pair<std::string, std::vector<int>>>& subsets) {
    std::vector<AblationRow> rows;
    for (const auto& [name, columns] : subsets) {
        for (int c : columns)
            if (c < 0 || c >= train_x.cols())
                throw std::invalid_argument("ablation: unknown column index " +
                                            std::to_string(c));
        Eigen::MatrixXd sub_train(train_x.rows(), static_cast<Eigen::Index>(columns.size()));
        Eigen::MatrixXd sub_test(test_x.rows(), static_cast<Eigen::Index>(columns.size()));
        for (std::size_t k = 0; k < columns.size(); ++k) {
            sub_train.col(static_cast<Eigen::Index>(k)) = train_x.col(columns[k]);
            sub_test.col(static_cast<Eigen::Index>(k)) = test_x.col(columns[k]);
        }

        RandomForestConfig cfg = rf_config;
        cfg.features_per_split = std::min<int>(
            cfg.features_per_split, static_cast<int>(columns.size()));

        AblationRow row;
        row.subset = name;
        row.n_features = static_cast<int>(columns.size());

        const auto model = train_random_forest(sub_train, train_y, seed, cfg);
        std::vector<int> pred(test_y.size());
        std::vector<double> scores(test_y.size());
        for (std::size_t i = 0; i < test_y.size(); ++i) {
            const Eigen::VectorXd r = sub_test.row(static_cast<Eigen::Index>(i));
            scores[i] = rf_predict(model, r);
            pred[i] = scores[i] >= 0.5 ? 1 : 0;
        }
        row.f1 = binary_metrics(test_y, pred).f1;
        row.auc = roc_auc(test_y, scores);
        row.degenerate = row.f1 == 0.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace aegis
