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

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace textclf {

// counts[p][r] = number of documents predicted as classes[p] whose real class is classes[r].
struct ConfusionMatrix {
  std::vector<std::string> classes;
  std::vector<std::vector<std::size_t>> counts;

  std::size_t total() const;
  std::size_t index_of(const std::string& label) const;
};

struct ClassMetrics {
  std::string label;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

struct MetricsReport {
  ConfusionMatrix confusion;
  std::vector<ClassMetrics> per_class;
  double macro_f = 0.0;
  double accuracy = 0.0;
};

ConfusionMatrix confusion(std::span<const std::string> predicted, std::span<const std::string> real,
                          std::span<const std::string> classes);

struct PrecisionRecall {
  double precision;
  double recall;
};

// One-vs-rest reduction for one class; 0/0 is taken as 0.
PrecisionRecall precision_recall(const ConfusionMatrix& cm, const std::string& label);
ClassMetrics class_metrics(const ConfusionMatrix& cm, std::size_t index);

// Harmonic mean of precision and recall; 0 when both are 0.
double f_score(double precision, double recall);

// Unweighted mean of the per-class F-scores.
double macro_f(const ConfusionMatrix& cm);
double accuracy(const ConfusionMatrix& cm);

MetricsReport make_report(const ConfusionMatrix& cm);

// Full grid, per-class metrics rounded to 6 decimals, macro_f and accuracy.
nlohmann::json report_to_json(const MetricsReport& report);

double round6(double x);

}  // namespace textclf
