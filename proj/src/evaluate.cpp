/*
 * Copyright 2026 The textclf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "textclf/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "textclf/error.hpp"

namespace textclf {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::size_t ConfusionMatrix::total() const {
  std::size_t sum = 0;
  for (const auto& row : counts) sum = std::accumulate(row.begin(), row.end(), sum);
  return sum;
}

std::size_t ConfusionMatrix::index_of(const std::string& label) const {
  auto it = std::find(classes.begin(), classes.end(), label);
  if (it == classes.end()) throw InvalidArgument("unknown class label '" + label + "'");
  return static_cast<std::size_t>(it - classes.begin());
}

ConfusionMatrix confusion(std::span<const std::string> predicted, std::span<const std::string> real,
                          std::span<const std::string> classes) {
  if (predicted.size() != real.size()) {
    throw InvalidArgument("confusion: predicted and real label lists differ in length");
  }
  if (predicted.empty()) throw InvalidArgument("confusion: no labels");
  ConfusionMatrix cm;
  cm.classes.assign(classes.begin(), classes.end());
  cm.counts.assign(classes.size(), std::vector<std::size_t>(classes.size(), 0));
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    ++cm.counts[cm.index_of(predicted[i])][cm.index_of(real[i])];
  }
  return cm;
}

ClassMetrics class_metrics(const ConfusionMatrix& cm, std::size_t c) {
  ClassMetrics m;
  m.label = cm.classes[c];
  const std::size_t n = cm.classes.size();
  m.tp = cm.counts[c][c];
  for (std::size_t k = 0; k < n; ++k) {
    if (k == c) continue;
    m.fp += cm.counts[c][k];
    m.fn += cm.counts[k][c];
  }
  m.tn = cm.total() - m.tp - m.fp - m.fn;
  m.precision = ratio(m.tp, m.tp + m.fp);
  m.recall = ratio(m.tp, m.tp + m.fn);
  m.f = f_score(m.precision, m.recall);
  return m;
}

PrecisionRecall precision_recall(const ConfusionMatrix& cm, const std::string& label) {
  const auto m = class_metrics(cm, cm.index_of(label));
  return {m.precision, m.recall};
}

double f_score(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

double macro_f(const ConfusionMatrix& cm) {
  if (cm.classes.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t c = 0; c < cm.classes.size(); ++c) sum += class_metrics(cm, c).f;
  return sum / static_cast<double>(cm.classes.size());
}

double accuracy(const ConfusionMatrix& cm) {
  std::size_t trace = 0;
  for (std::size_t c = 0; c < cm.classes.size(); ++c) trace += cm.counts[c][c];
  return ratio(trace, cm.total());
}

MetricsReport make_report(const ConfusionMatrix& cm) {
  MetricsReport r;
  r.confusion = cm;
  for (std::size_t c = 0; c < cm.classes.size(); ++c) r.per_class.push_back(class_metrics(cm, c));
  r.macro_f = macro_f(cm);
  r.accuracy = accuracy(cm);
  return r;
}

double round6(double x) { return std::round(x * 1e6) / 1e6; }

nlohmann::json report_to_json(const MetricsReport& report) {
  nlohmann::json per_class = nlohmann::json::array();
  for (const auto& m : report.per_class) {
    per_class.push_back({{"class", m.label},
                         {"tp", m.tp},
                         {"fp", m.fp},
                         {"fn", m.fn},
                         {"tn", m.tn},
                         {"precision", round6(m.precision)},
                         {"recall", round6(m.recall)},
                         {"f", round6(m.f)}});
  }
  return {{"classes", report.confusion.classes},
          {"confusion", {{"orientation", "rows=predicted,columns=real"},
                         {"counts", report.confusion.counts}}},
          {"per_class", std::move(per_class)},
          {"macro_f", round6(report.macro_f)},
          {"accuracy", round6(report.accuracy)}};
}

}  // namespace textclf
