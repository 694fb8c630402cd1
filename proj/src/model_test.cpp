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

#include "test_support.hpp"
#include "textclf/classifiers.hpp"
#include "textclf/error.hpp"
#include "textclf/model_io.hpp"

namespace textclf {
namespace {

using testing::toy_matrix;

TermDocMatrix small_corpus() {
  return toy_matrix({{"moon night star", "x"}, {"moon star dark", "x"}, {"night moon", "x"},
                     {"sea wave salt", "y"}, {"wave sea sand", "y"}, {"sand salt", "y"},
                     {"field grain corn", "z"}, {"corn field rain", "z"}, {"grain rain", "z"}});
}

std::vector<ModelSpec> all_specs() {
  ForestSpec rf;
  rf.n_trees = 7;
  return {NbSpec{}, KnnSpec{}, SvmSpec{}, TreeSpec{}, rf};
}

TEST(ModelKindNames, RoundTrip) {
  for (auto kind : {ModelKind::NaiveBayes, ModelKind::Knn, ModelKind::SvmSmo, ModelKind::C45, ModelKind::RandomForest}) {
    EXPECT_EQ(parse_model_kind(to_string(kind)), kind);
  }
  EXPECT_EQ(to_string(ModelKind::SvmSmo), "SVM_SMO");
  EXPECT_FALSE(parse_model_kind("svm").has_value());
}

TEST(Argmax, LowestIndexWinsTies) {
  EXPECT_EQ(argmax(std::vector<double>{1, 3, 3}), 1u);
  EXPECT_EQ(argmax(std::vector<double>{2, 2, 2}), 0u);
}

TEST(Validate, RejectsBadHyperparameters) {
  EXPECT_THROW(validate(NbSpec{0.0}), InvalidArgument);
  EXPECT_THROW(validate(KnnSpec{0, Similarity::Cosine}), InvalidArgument);
  SvmSpec svm;
  svm.tolerance = 0.0;
  EXPECT_THROW(validate(svm), InvalidArgument);
  TreeSpec tree;
  tree.min_leaf = 0;
  EXPECT_THROW(validate(tree), InvalidArgument);
  ForestSpec rf;
  rf.n_trees = 0;
  EXPECT_THROW(validate(rf), InvalidArgument);
}

TEST(UniformContract, EveryKindFitsItsTrainingSet) {
  const auto m = small_corpus();
  for (const auto& spec : all_specs()) {
    const Model model = train(m, spec);
    EXPECT_EQ(model.kind(), kind_of(spec));
    for (const auto& row : m.rows) {
      const auto p = predict(model, row.vector);
      EXPECT_EQ(p.scores.size(), 3u);
      EXPECT_LT(p.label, 3u);
      if (kind_of(spec) != ModelKind::RandomForest) EXPECT_EQ(p.label, row.label) << to_string(model.kind());
    }
  }
}

TEST(UniformContract, TrainingIsDeterministic) {
  const auto m = small_corpus();
  for (const auto& spec : all_specs()) {
    EXPECT_EQ(model_to_json(train(m, spec)).dump(), model_to_json(train(m, spec)).dump());
  }
}

TEST(UniformContract, DimensionMismatchThrows) {
  const auto m = small_corpus();
  const Model model = train(m, NbSpec{});
  DocVector v;
  v.dimension = m.dimension() + 1;
  EXPECT_THROW(predict(model, v), InvalidArgument);
}

TEST(UniformContract, NaiveBayesAndKnnAgreeOnToyQuery) {
  const auto m = toy_matrix({{"a a", "c1"}, {"b b", "c2"}});
  const auto q = encode({"a"}, m.vocab, m.n_train);
  KnnSpec knn;
  knn.k = 1;
  EXPECT_EQ(predict(train(m, NbSpec{}), q).label, 0u);
  EXPECT_EQ(predict(train(m, knn), q).label, 0u);
}

TEST(UniformContract, SingleClassRejected) {
  EXPECT_THROW(train(toy_matrix({{"a", "x"}, {"b", "x"}}), TreeSpec{}), InvalidArgument);
}

TEST(ModelJson, RoundTripPreservesPredictionsAndBytes) {
  const auto m = small_corpus();
  for (const auto& spec : all_specs()) {
    const Model model = train(m, spec);
    const auto j = model_to_json(model);
    const Model back = model_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(model_to_json(back).dump(), j.dump());
    for (const auto& row : m.rows) {
      const auto a = predict(model, row.vector);
      const auto b = predict(back, row.vector);
      EXPECT_EQ(a.label, b.label);
      EXPECT_EQ(a.scores, b.scores);
    }
  }
}

TEST(ModelJson, SpecParsing) {
  const auto spec = spec_from_json({{"kind", "SVM_SMO"}, {"C", 0.5}});
  EXPECT_DOUBLE_EQ(std::get<SvmSpec>(spec).c, 0.5);
  EXPECT_EQ(std::get<SvmSpec>(spec).max_passes, 10u);
  EXPECT_THROW(spec_from_json({{"kind", "NB"}, {"beta", 1}}), DataError);
  EXPECT_THROW(spec_from_json({{"kind", "XGB"}}), DataError);
  EXPECT_THROW(spec_from_json({{"kind", "KNN"}, {"k", "three"}}), DataError);
  EXPECT_THROW(spec_from_json({{"kind", "KNN"}, {"k", 0}}), DataError);
  EXPECT_EQ(spec_to_json(NbSpec{}), (nlohmann::json{{"alpha", 1.0}}));
}

TEST(ModelJson, MalformedInputIsDataError) {
  auto j = model_to_json(train(small_corpus(), TreeSpec{}));
  auto broken = j;
  broken["payload"]["nodes"][0]["left"] = 0;
  EXPECT_THROW(model_from_json(broken), DataError);
  broken = j;
  broken.erase("categories");
  EXPECT_THROW(model_from_json(broken), DataError);
  EXPECT_THROW(model_from_json(nlohmann::json::array()), DataError);
}

}  // namespace
}  // namespace textclf
