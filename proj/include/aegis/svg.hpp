#pragma once

#include <string>
#include <vector>

#include "aegis/evaluation.hpp"

namespace aegis {

// Derived views only; the numbers always live in sibling CSV/JSON artifacts.
std::string svg_roc_curve(const std::vector<RocPoint>& points, const std::string& title,
                          double auc);
std::string svg_confusion_matrix(const ConfusionMatrix& cm, const std::string& title);
std::string svg_importance_bars(const std::vector<std::string>& names,
                                const std::vector<double>& values,
                                const std::string& title);

}  // namespace aegis
