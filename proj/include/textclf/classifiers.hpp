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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "textclf/vectorize.hpp"

namespace textclf {

enum class ModelKind { NaiveBayes, Knn, SvmSmo, C45, RandomForest };

// "NB", "KNN", "SVM_SMO", "C45", "RF".
std::string_view to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view name);

// ---------------------------------------------------------------------------
// Hyperparameters

struct NbSpec {
  double alpha = 1.0;  // Laplace / Lidstone smoothing
};

enum class Similarity { Cosine, Euclidean };

struct KnnSpec {
  std::size_t k = 3;
  Similarity similarity = Similarity::Cosine;
};

struct SvmSpec {
  double c = 1.0;
  double tolerance = 1e-3;
  std::size_t max_passes = 10;  // consecutive sweeps without an update
  std::uint64_t seed = 42;
};

struct TreeSpec {
  std::size_t min_leaf = 1;
  std::size_t max_depth = 0;  // 0 = unlimited
};

struct ForestSpec {
  std::size_t n_trees = 100;
  std::size_t features_per_split = 0;  // 0 = ceil(sqrt(|V|))
  bool bootstrap = true;
  std::uint64_t seed = 42;
  TreeSpec tree;
};

using ModelSpec = std::variant<NbSpec, KnnSpec, SvmSpec, TreeSpec, ForestSpec>;

ModelKind kind_of(const ModelSpec& spec);
ModelSpec default_spec(ModelKind kind);
// Throws InvalidArgument when a hyperparameter is out of range.
void validate(const ModelSpec& spec);

// ---------------------------------------------------------------------------
// Trained artifacts

struct Prediction {
  std::size_t label = 0;  // index into the model's categories
  std::vector<double> scores;
};

// Index of the largest score; ties go to the lowest index, i.e. the
// lexicographically smallest category.
std::size_t argmax(std::span<const double> scores);

struct NbModel {
  NbSpec spec;
  std::vector<double> log_prior;                     // per class
  std::vector<std::vector<double>> log_likelihood;  // [class][term]
};

struct KnnModel {
  KnnSpec spec;
  std::vector<SparseVector> rows;
  std::vector<std::size_t> labels;
  std::vector<double> norms;
};

struct BinarySvm {
  std::size_t positive = 0;  // class voted for when f(x) > 0
  std::size_t negative = 0;
  std::vector<double> w;
  double b = 0.0;
  // (training row, alpha) for every alpha > 0, rows numbered within the pair's problem
  std::vector<std::pair<std::size_t, double>> support;
  bool converged = true;

  double decision(const SparseVector& x) const;
};

struct SvmModel {
  SvmSpec spec;
  std::vector<BinarySvm> machines;  // one per unordered class pair
};

struct TreeNode {
  // Internal nodes: go left when x[feature] <= threshold. Leaves have feature < 0.
  std::int64_t feature = -1;
  double threshold = 0.0;
  std::size_t left = 0;
  std::size_t right = 0;
  std::size_t label = 0;
  std::vector<std::size_t> class_counts;

  bool is_leaf() const { return feature < 0; }
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  const TreeNode& leaf_for(const SparseVector& x) const;
  std::size_t depth() const;
};

struct TreeModel {
  TreeSpec spec;
  DecisionTree tree;
};

struct ForestModel {
  ForestSpec spec;
  std::vector<DecisionTree> trees;
  std::vector<std::uint64_t> tree_seeds;
};

struct Model {
  std::vector<std::string> categories;
  std::size_t dimension = 0;
  std::variant<NbModel, KnnModel, SvmModel, TreeModel, ForestModel> payload;

  ModelKind kind() const;
};

// ---------------------------------------------------------------------------
// Naive Bayes (multinomial over raw term counts)

NbModel nb_train(const TermDocMatrix& matrix, double alpha);
Prediction nb_predict(const NbModel& model, const TermCounts& counts);

// ---------------------------------------------------------------------------
// k-nearest neighbours

KnnModel knn_train(const TermDocMatrix& matrix, const KnnSpec& spec);
Prediction knn_predict(const KnnModel& model, const SparseVector& query, std::size_t n_classes);
Prediction knn_predict(const TermDocMatrix& train, const SparseVector& query, std::size_t k);
double cosine_similarity(const SparseVector& a, const SparseVector& b);

// ---------------------------------------------------------------------------
// Linear SVM trained with sequential minimal optimization

struct SmoResult {
  std::vector<double> alpha;
  double b = 0.0;
  std::vector<double> w;
  bool converged = false;
  std::size_t sweeps = 0;
};

// Solves the soft-margin dual for the linear kernel. y[i] must be +1 or -1.
SmoResult smo_solve_binary(std::span<const SparseVector> x, std::span<const int> y,
                           std::size_t dimension, const SvmSpec& spec);

// sum(alpha) - 0.5 * |sum(alpha_i y_i x_i)|^2
double svm_dual_objective(std::span<const SparseVector> x, std::span<const int> y,
                          std::span<const double> alpha);

// Largest violation of the KKT conditions for (alpha, w, b); zero at the optimum.
double kkt_violation(std::span<const SparseVector> x, std::span<const int> y,
                     std::span<const double> alpha, std::span<const double> w, double b, double c);

SvmModel svm_train_multiclass(const TermDocMatrix& matrix, const SvmSpec& spec);
Prediction svm_predict(const SvmModel& model, const SparseVector& x, std::size_t n_classes);

// ---------------------------------------------------------------------------
// C4.5-style trees and random forests

// Shannon entropy in bits of a class histogram.
double entropy(std::span<const std::size_t> class_counts);

TreeModel c45_train(const TermDocMatrix& matrix, const TreeSpec& spec);
ForestModel rf_train(const TermDocMatrix& matrix, const ForestSpec& spec);
Prediction tree_predict(const DecisionTree& tree, const SparseVector& x, std::size_t n_classes);
Prediction forest_predict(const ForestModel& model, const SparseVector& x, std::size_t n_classes);

// ---------------------------------------------------------------------------
// Uniform contract

Model train(const TermDocMatrix& matrix, const ModelSpec& spec);
Prediction predict(const Model& model, const DocVector& v);

}  // namespace textclf
