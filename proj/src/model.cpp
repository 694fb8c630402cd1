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

#include "textclf/classifiers.hpp"
#include "textclf/error.hpp"

namespace textclf {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::NaiveBayes:
      return "NB";
    case ModelKind::Knn:
      return "KNN";
    case ModelKind::SvmSmo:
      return "SVM_SMO";
    case ModelKind::C45:
      return "C45";
    case ModelKind::RandomForest:
      return "RF";
  }
  return "?";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  for (auto kind : {ModelKind::NaiveBayes, ModelKind::Knn, ModelKind::SvmSmo, ModelKind::C45,
                    ModelKind::RandomForest}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

ModelKind kind_of(const ModelSpec& spec) { return static_cast<ModelKind>(spec.index()); }

ModelKind Model::kind() const { return static_cast<ModelKind>(payload.index()); }

ModelSpec default_spec(ModelKind kind) {
  switch (kind) {
    case ModelKind::NaiveBayes:
      return NbSpec{};
    case ModelKind::Knn:
      return KnnSpec{};
    case ModelKind::SvmSmo:
      return SvmSpec{};
    case ModelKind::C45:
      return TreeSpec{};
    case ModelKind::RandomForest:
      return ForestSpec{};
  }
  return NbSpec{};
}

namespace {

void validate_tree(const TreeSpec& s) {
  if (s.min_leaf < 1) throw InvalidArgument("C45: min_leaf must be >= 1");
}

struct Validator {
  void operator()(const NbSpec& s) const {
    if (!(s.alpha > 0.0)) throw InvalidArgument("NB: alpha must be > 0");
  }
  void operator()(const KnnSpec& s) const {
    if (s.k < 1) throw InvalidArgument("KNN: k must be >= 1");
  }
  void operator()(const SvmSpec& s) const {
    if (!(s.c > 0.0)) throw InvalidArgument("SVM_SMO: C must be > 0");
    if (!(s.tolerance > 0.0)) throw InvalidArgument("SVM_SMO: tolerance must be > 0");
    if (s.max_passes < 1) throw InvalidArgument("SVM_SMO: max_passes must be >= 1");
  }
  void operator()(const TreeSpec& s) const { validate_tree(s); }
  void operator()(const ForestSpec& s) const {
    if (s.n_trees < 1) throw InvalidArgument("RF: n_trees must be >= 1");
    validate_tree(s.tree);
  }
};

}  // namespace

void validate(const ModelSpec& spec) { std::visit(Validator{}, spec); }

std::size_t argmax(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

Model train(const TermDocMatrix& matrix, const ModelSpec& spec) {
  validate(spec);
  if (matrix.rows.empty()) throw InvalidArgument("train: empty training matrix");
  if (matrix.categories.size() < 2) throw InvalidArgument("train: need at least two classes");
  Model model;
  model.categories = matrix.categories;
  model.dimension = matrix.dimension();
  switch (kind_of(spec)) {
    case ModelKind::NaiveBayes:
      model.payload = nb_train(matrix, std::get<NbSpec>(spec).alpha);
      break;
    case ModelKind::Knn:
      model.payload = knn_train(matrix, std::get<KnnSpec>(spec));
      break;
    case ModelKind::SvmSmo:
      model.payload = svm_train_multiclass(matrix, std::get<SvmSpec>(spec));
      break;
    case ModelKind::C45:
      model.payload = c45_train(matrix, std::get<TreeSpec>(spec));
      break;
    case ModelKind::RandomForest:
      model.payload = rf_train(matrix, std::get<ForestSpec>(spec));
      break;
  }
  return model;
}

Prediction predict(const Model& model, const DocVector& v) {
  if (v.dimension != model.dimension) {
    throw InvalidArgument("predict: vector dimension " + std::to_string(v.dimension) +
                          " does not match model dimension " + std::to_string(model.dimension));
  }
  for (const auto& e : v.counts) {
    if (e.column >= model.dimension) throw InvalidArgument("predict: column out of range");
  }
  const std::size_t n_classes = model.categories.size();
  struct Dispatch {
    const DocVector& v;
    std::size_t n_classes;
    Prediction operator()(const NbModel& m) const { return nb_predict(m, v.counts); }
    Prediction operator()(const KnnModel& m) const { return knn_predict(m, v.weights, n_classes); }
    Prediction operator()(const SvmModel& m) const { return svm_predict(m, v.weights, n_classes); }
    Prediction operator()(const TreeModel& m) const { return tree_predict(m.tree, v.weights, n_classes); }
    Prediction operator()(const ForestModel& m) const { return forest_predict(m, v.weights, n_classes); }
  };
  return std::visit(Dispatch{v, n_classes}, model.payload);
}

}  // namespace textclf
