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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "textclf/classifiers.hpp"
#include "textclf/error.hpp"

namespace textclf {

double cosine_similarity(const SparseVector& a, const SparseVector& b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

KnnModel knn_train(const TermDocMatrix& matrix, const KnnSpec& spec) {
  if (spec.k < 1) throw InvalidArgument("KNN: k must be >= 1");
  KnnModel model;
  model.spec = spec;
  model.rows.reserve(matrix.rows.size());
  for (const auto& row : matrix.rows) {
    model.rows.push_back(row.vector.weights);
    model.labels.push_back(row.label);
    model.norms.push_back(norm(row.vector.weights));
  }
  return model;
}

Prediction knn_predict(const KnnModel& model, const SparseVector& query, std::size_t n_classes) {
  const std::size_t n = model.rows.size();
  const std::size_t k = model.spec.k;
  if (k < 1 || k > n) {
    throw InvalidArgument("KNN: k must lie in [1, " + std::to_string(n) + "]");
  }
  const double query_norm = norm(query);
  std::vector<double> similarity(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (model.spec.similarity == Similarity::Cosine) {
      similarity[i] = (query_norm == 0.0 || model.norms[i] == 0.0)
                          ? 0.0
                          : dot(query, model.rows[i]) / (query_norm * model.norms[i]);
    } else {
      const double sq = query_norm * query_norm + model.norms[i] * model.norms[i] -
                        2.0 * dot(query, model.rows[i]);
      similarity[i] = -std::sqrt(std::max(sq, 0.0));
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (similarity[a] != similarity[b]) return similarity[a] > similarity[b];
                      return a < b;
                    });
  Prediction p;
  p.scores.assign(n_classes, 0.0);
  for (std::size_t r = 0; r < k; ++r) p.scores[model.labels[order[r]]] += 1.0;
  p.label = argmax(p.scores);
  return p;
}

Prediction knn_predict(const TermDocMatrix& train, const SparseVector& query, std::size_t k) {
  KnnSpec spec;
  spec.k = k;
  return knn_predict(knn_train(train, spec), query, train.categories.size());
}

}  // namespace textclf
