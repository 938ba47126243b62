#include "aegis/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace aegis {
namespace {

std::string num(double v) {
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
}

}  // namespace

std::string svg_roc_curve(const std::vector<RocPoint>& points, const std::string& title,
                          double auc) {
    const double w = 420, h = 420, pad = 50;
    std::ostringstream s;
    s << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
    s << "<rect width='100%' height='100%' fill='white'/>\n";
    s << "<text x='" << w / 2 << "' y='24' text-anchor='middle' font-size='15'>" << title
      << " (AUC " << num(auc) << ")</text>\n";
    auto X = [&](double fpr) { return pad + fpr * (w - 2 * pad); };
    auto Y = [&](double tpr) { return h - pad - tpr * (h - 2 * pad); };
    s << "<line x1='" << X(0) << "' y1='" << Y(0) << "' x2='" << X(1) << "' y2='" << Y(0)
      << "' stroke='black'/>\n";
    s << "<line x1='" << X(0) << "' y1='" << Y(0) << "' x2='" << X(0) << "' y2='" << Y(1)
      << "' stroke='black'/>\n";
    s << "<line x1='" << X(0) << "' y1='" << Y(0) << "' x2='" << X(1) << "' y2='" << Y(1)
      << "' stroke='gray' stroke-dasharray='4'/>\n";
    s << "<polyline fill='none' stroke='steelblue' stroke-width='2' points='";
    for (const auto& p : points) s << X(p.fpr) << "," << Y(p.tpr) << " ";
    s << "'/>\n";
    s << "<text x='" << w / 2 << "' y='" << h - 12
      << "' text-anchor='middle' font-size='12'>false positive rate</text>\n";
    s << "<text x='16' y='" << h / 2
      << "' font-size='12' transform='rotate(-90 16 " << h / 2
      << ")' text-anchor='middle'>true positive rate</text>\n";
    s << "</svg>\n";
    return s.str();
}

std::string svg_confusion_matrix(const ConfusionMatrix& cm, const std::string& title) {
    const double cell = 130, pad = 70;
    const double w = pad + 2 * cell + 40, h = pad + 2 * cell + 60;
    const long values[2][2] = {{cm.tn, cm.fp}, {cm.fn, cm.tp}};
    const long max_v = std::max({cm.tn, cm.fp, cm.fn, cm.tp, 1L});
    const char* row_names[2] = {"benign", "malicious"};
    const char* col_names[2] = {"pred benign", "pred malicious"};

    std::ostringstream s;
    s << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
    s << "<rect width='100%' height='100%' fill='white'/>\n";
    s << "<text x='" << w / 2 << "' y='24' text-anchor='middle' font-size='15'>" << title
      << "</text>\n";
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            const double x = pad + c * cell, y = pad + r * cell;
            const double shade = 1.0 - 0.75 * static_cast<double>(values[r][c]) /
                                           static_cast<double>(max_v);
            const int rgb = static_cast<int>(255 * shade);
            s << "<rect x='" << x << "' y='" << y << "' width='" << cell << "' height='"
              << cell << "' fill='rgb(" << rgb << "," << rgb << ",255)' stroke='black'/>\n";
            s << "<text x='" << x + cell / 2 << "' y='" << y + cell / 2 + 6
              << "' text-anchor='middle' font-size='20'>" << values[r][c] << "</text>\n";
        }
        s << "<text x='" << pad - 8 << "' y='" << pad + r * cell + cell / 2
          << "' text-anchor='end' font-size='12'>" << row_names[r] << "</text>\n";
    }
    for (int c = 0; c < 2; ++c)
        s << "<text x='" << pad + c * cell + cell / 2 << "' y='" << pad + 2 * cell + 24
          << "' text-anchor='middle' font-size='12'>" << col_names[c] << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

std::string svg_importance_bars(const std::vector<std::string>& names,
                                const std::vector<double>& values,
                                const std::string& title) {
    const double bar_h = 20, gap = 6, pad_left = 220, pad_top = 50;
    const double w = 720;
    const double h = pad_top + names.size() * (bar_h + gap) + 20;
    double max_v = 1e-12;
    for (double v : values) max_v = std::max(max_v, v);

    // sort descending for display
    std::vector<std::size_t> order(names.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

    std::ostringstream s;
    s << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
    s << "<rect width='100%' height='100%' fill='white'/>\n";
    s << "<text x='" << w / 2 << "' y='24' text-anchor='middle' font-size='15'>" << title
      << "</text>\n";
    for (std::size_t k = 0; k < order.size(); ++k) {
        const std::size_t i = order[k];
        const double y = pad_top + static_cast<double>(k) * (bar_h + gap);
        const double len = (w - pad_left - 80) * values[i] / max_v;
        s << "<text x='" << pad_left - 8 << "' y='" << y + bar_h - 5
          << "' text-anchor='end' font-size='12'>" << names[i] << "</text>\n";
        s << "<rect x='" << pad_left << "' y='" << y << "' width='" << len << "' height='"
          << bar_h << "' fill='steelblue'/>\n";
        s << "<text x='" << pad_left + len + 6 << "' y='" << y + bar_h - 5
          << "' font-size='11'>" << num(values[i]) << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace aegis
