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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "test_support.hpp"
#include "textclf/classifiers.hpp"
#include "textclf/error.hpp"

namespace textclf {
namespace {

using testing::dense_matrix;
using testing::toy_matrix;

TEST(Knn, ExactMatchWithKOne) {
  const auto m = toy_matrix({{"a b", "x"}, {"c d", "y"}, {"a c e", "z"}, {"b e e", "y"}});
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    EXPECT_EQ(knn_predict(m, m.rows[r].vector.weights, 1).label, m.rows[r].label);
  }
}

TEST(Knn, FullKIsMajority) {
  const auto m = toy_matrix({{"a", "x"}, {"b", "y"}, {"c", "y"}, {"d", "z"}});
  const auto p = knn_predict(m, m.rows[0].vector.weights, 4);
  EXPECT_EQ(p.label, 1u);
  EXPECT_EQ(p.scores, (std::vector<double>{1, 2, 1}));
}

TEST(Knn, VoteTieGoesToLowestClass) {
  const auto m = dense_matrix({{1, 0}, {0, 1}}, {1, 0}, 2);
  EXPECT_EQ(knn_predict(m, {{0, 1.0}, {1, 1.0}}, 2).label, 0u);
}

TEST(Knn, SimilarityTieGoesToLowerRow) {
  // Both rows are equally similar to the query; k=1 must pick row 0.
  const auto m = dense_matrix({{1, 0}, {0, 1}}, {1, 0}, 2);
  EXPECT_EQ(knn_predict(m, {{0, 1.0}, {1, 1.0}}, 1).label, 1u);
}

TEST(Knn, ZeroQueryHasZeroSimilarity) {
  const auto m = dense_matrix({{1, 0}, {0, 1}, {1, 1}}, {1, 0, 1}, 2);
  // All similarities are 0, so the first k rows by index vote.
  EXPECT_EQ(knn_predict(m, {}, 1).label, 1u);
}

// Exhaustive scan with long double cosines.
std::size_t oracle_label(const std::vector<std::vector<double>>& x, const std::vector<std::size_t>& y,
                         const std::vector<double>& q, std::size_t k, std::size_t n_classes) {
  std::vector<long double> sim(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    long double d = 0, nx = 0, nq = 0;
    for (std::size_t f = 0; f < q.size(); ++f) {
      d += static_cast<long double>(x[i][f]) * q[f];
      nx += static_cast<long double>(x[i][f]) * x[i][f];
      nq += static_cast<long double>(q[f]) * q[f];
    }
    sim[i] = (nx == 0 || nq == 0) ? 0 : d / std::sqrt(nx * nq);
  }
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sim[a] > sim[b]; });
  std::vector<int> votes(n_classes, 0);
  for (std::size_t r = 0; r < k; ++r) ++votes[y[order[r]]];
  return static_cast<std::size_t>(std::max_element(votes.begin(), votes.end()) - votes.begin());
}

TEST(Knn, MatchesExhaustiveOracle) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> value(0.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + trial % 5;
    std::vector<std::vector<double>> x(n, std::vector<double>(3));
    std::vector<std::size_t> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& v : x[i]) v = gen() % 3 == 0 ? 0.0 : value(gen);
      y[i] = i < 3 ? i : gen() % 3;
    }
    const auto m = dense_matrix(x, y, 3);
    std::vector<double> q(3);
    for (auto& v : q) v = value(gen);
    SparseVector qs;
    for (std::size_t f = 0; f < 3; ++f) qs.push_back({static_cast<ColumnId>(f), q[f]});
    const std::size_t k = trial % 2 == 0 ? 3 : 1;
    EXPECT_EQ(knn_predict(m, qs, k).label, oracle_label(x, y, q, k, 3)) << "trial " << trial;
  }
}

TEST(Knn, EuclideanOption) {
  const auto m = dense_matrix({{1, 0}, {10, 0}}, {0, 1}, 2);
  KnnSpec spec{1, Similarity::Euclidean};
  const auto model = knn_train(m, spec);
  // Cosine cannot tell the rows apart; distance can.
  EXPECT_EQ(knn_predict(model, {{0, 9.0}}, 2).label, 1u);
  EXPECT_EQ(knn_predict(m, {{0, 9.0}}, 1).label, 0u);
}

TEST(Knn, Errors) {
  const auto m = toy_matrix({{"a", "x"}, {"b", "y"}});
  EXPECT_THROW(knn_predict(m, {}, 0), InvalidArgument);
  EXPECT_THROW(knn_predict(m, {}, 3), InvalidArgument);
}

TEST(Knn, CosineSimilarity) {
  EXPECT_DOUBLE_EQ(cosine_similarity({{0, 1.0}}, {{0, 5.0}}), 1.0);
  EXPECT_DOUBLE_EQ(cosine_similarity({{0, 1.0}}, {{1, 5.0}}), 0.0);
  EXPECT_DOUBLE_EQ(cosine_similarity({}, {{1, 5.0}}), 0.0);
}

}  // namespace
}  // namespace textclf
