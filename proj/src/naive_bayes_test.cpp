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

#include "test_support.hpp"
#include "textclf/classifiers.hpp"
#include "textclf/error.hpp"

namespace textclf {
namespace {

using testing::toy_matrix;

double likelihood_sum(const std::vector<double>& log_table) {
  double s = 0.0;
  for (double l : log_table) s += std::exp(l);
  return s;
}

TEST(NaiveBayes, HandComputedToyCorpus) {
  const auto m = toy_matrix({{"a a", "c1"}, {"b b", "c2"}});
  const auto nb = nb_train(m, 1.0);
  const auto a = *m.vocab.find("a");
  EXPECT_NEAR(std::exp(nb.log_likelihood[0][a]), 0.75, 1e-12);
  EXPECT_NEAR(std::exp(nb.log_likelihood[1][a]), 0.25, 1e-12);
  EXPECT_NEAR(std::exp(nb.log_prior[0]), 0.5, 1e-12);

  const auto p = nb_predict(nb, encode({"a"}, m.vocab, m.n_train).counts);
  EXPECT_EQ(p.label, 0u);
  EXPECT_NEAR(p.scores[0], std::log(0.5 * 0.75), 1e-12);
  EXPECT_NEAR(p.scores[1], std::log(0.5 * 0.25), 1e-12);
}

TEST(NaiveBayes, LikelihoodsNormalize) {
  const auto m = toy_matrix({{"a b c c", "x"}, {"b d", "y"}, {"a a e", "z"}, {"e e e d", "y"}});
  for (double alpha : {0.1, 1.0, 3.0}) {
    const auto nb = nb_train(m, alpha);
    for (const auto& row : nb.log_likelihood) EXPECT_NEAR(likelihood_sum(row), 1.0, 1e-12);
  }
}

TEST(NaiveBayes, EmptyAndOutOfVocabularyQueriesUsePriors) {
  const auto m = toy_matrix({{"a", "x"}, {"b", "y"}, {"c", "y"}});
  const auto nb = nb_train(m, 1.0);
  const auto empty = nb_predict(nb, {});
  EXPECT_EQ(empty.label, 1u);
  EXPECT_EQ(empty.scores, nb.log_prior);
  const auto oov = nb_predict(nb, encode({"zzz", "qqq"}, m.vocab, m.n_train).counts);
  EXPECT_EQ(oov.scores, empty.scores);
}

TEST(NaiveBayes, UniformCorpusGivesPriors) {
  const auto m = toy_matrix({{"a b", "x"}, {"a b", "y"}, {"a b", "y"}});
  const auto nb = nb_train(m, 1.0);
  const auto p = nb_predict(nb, encode({"a", "a", "b"}, m.vocab, m.n_train).counts);
  EXPECT_NEAR(p.scores[0] - p.scores[1], nb.log_prior[0] - nb.log_prior[1], 1e-12);
}

TEST(NaiveBayes, ArgmaxInvariantToConstantShift) {
  const auto m = toy_matrix({{"a a b", "x"}, {"b c", "y"}, {"c c a", "z"}});
  const auto nb = nb_train(m, 1.0);
  for (const auto& q : std::vector<TokenStream>{{"a"}, {"b", "c"}, {"c", "c"}, {}}) {
    auto p = nb_predict(nb, encode(q, m.vocab, m.n_train).counts);
    for (auto& s : p.scores) s += 123.5;
    EXPECT_EQ(argmax(p.scores), p.label);
  }
}

TEST(NaiveBayes, Errors) {
  EXPECT_THROW(nb_train(toy_matrix({{"a", "x"}, {"b", "x"}}), 1.0), InvalidArgument);
  EXPECT_THROW(nb_train(toy_matrix({{"a", "x"}, {"b", "y"}}), 0.0), InvalidArgument);
}

}  // namespace
}  // namespace textclf
