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

#include <cmath>

#include "textclf/classifiers.hpp"
#include "textclf/error.hpp"

namespace textclf {

NbModel nb_train(const TermDocMatrix& matrix, double alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("NB: alpha must be > 0");
  const std::size_t n_classes = matrix.categories.size();
  const std::size_t n_terms = matrix.dimension();
  if (matrix.rows.empty()) throw InvalidArgument("NB: empty training matrix");
  if (n_classes < 2) throw InvalidArgument("NB: need at least two classes");

  std::vector<std::size_t> docs_per_class(n_classes, 0);
  std::vector<std::vector<double>> term_counts(n_classes, std::vector<double>(n_terms, 0.0));
  std::vector<double> total_counts(n_classes, 0.0);
  for (const auto& row : matrix.rows) {
    ++docs_per_class[row.label];
    for (const auto& e : row.vector.counts) {
      term_counts[row.label][e.column] += e.value;
      total_counts[row.label] += e.value;
    }
  }

  NbModel model;
  model.spec.alpha = alpha;
  model.log_prior.resize(n_classes);
  model.log_likelihood.assign(n_classes, std::vector<double>(n_terms, 0.0));
  const double n_docs = static_cast<double>(matrix.rows.size());
  for (std::size_t c = 0; c < n_classes; ++c) {
    if (docs_per_class[c] == 0) {
      throw InvalidArgument("NB: class '" + matrix.categories[c] + "' has no training documents");
    }
    model.log_prior[c] = std::log(static_cast<double>(docs_per_class[c]) / n_docs);
    const double denominator = total_counts[c] + alpha * static_cast<double>(n_terms);
    for (std::size_t t = 0; t < n_terms; ++t) {
      model.log_likelihood[c][t] = std::log((term_counts[c][t] + alpha) / denominator);
    }
  }
  return model;
}

Prediction nb_predict(const NbModel& model, const TermCounts& counts) {
  Prediction p;
  p.scores = model.log_prior;
  for (std::size_t c = 0; c < p.scores.size(); ++c) {
    const auto& table = model.log_likelihood[c];
    for (const auto& e : counts) {
      if (e.column < table.size()) p.scores[c] += static_cast<double>(e.value) * table[e.column];
    }
  }
  p.label = argmax(p.scores);
  return p;
}

}  // namespace textclf
