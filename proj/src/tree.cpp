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
#include "textclf/random.hpp"

namespace textclf {

double entropy(std::span<const std::size_t> class_counts) {
  const std::size_t total = std::accumulate(class_counts.begin(), class_counts.end(), std::size_t{0});
  if (total == 0) throw InvalidArgument("entropy: class counts sum to zero");
  double h = 0.0;
  for (std::size_t count : class_counts) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

namespace {

// Gain ratios closer than this are treated as equal; the first candidate in
// (feature, threshold) order wins.
constexpr double kTieEpsilon = 1e-12;

struct CandidateSplit {
  std::size_t feature = 0;
  double threshold = 0.0;
  double gain_ratio = 0.0;
};

// Column-major dense copy of the TF-IDF weights; absent entries are 0.
class DenseColumns {
 public:
  explicit DenseColumns(const TermDocMatrix& matrix)
      : n_rows_(matrix.rows.size()), values_(matrix.dimension() * matrix.rows.size(), 0.0) {
    for (std::size_t r = 0; r < n_rows_; ++r) {
      for (const auto& e : matrix.rows[r].vector.weights) values_[e.column * n_rows_ + r] = e.value;
    }
  }
  double at(std::size_t feature, std::size_t row) const { return values_[feature * n_rows_ + row]; }

 private:
  std::size_t n_rows_;
  std::vector<double> values_;
};

class TreeBuilder {
 public:
  TreeBuilder(const TermDocMatrix& matrix, const DenseColumns& columns, const TreeSpec& spec,
              std::size_t features_per_split, Rng* rng)
      : matrix_(matrix), columns_(columns), spec_(spec), n_classes_(matrix.categories.size()),
        n_features_(matrix.dimension()), features_per_split_(features_per_split), rng_(rng) {
    feature_pool_.resize(n_features_);
    std::iota(feature_pool_.begin(), feature_pool_.end(), std::size_t{0});
  }

  DecisionTree build(std::vector<std::size_t> samples) {
    DecisionTree tree;
    grow(tree, std::move(samples), 0);
    return tree;
  }

 private:
  std::vector<std::size_t> histogram(const std::vector<std::size_t>& samples) const {
    std::vector<std::size_t> counts(n_classes_, 0);
    for (auto r : samples) ++counts[matrix_.rows[r].label];
    return counts;
  }

  std::size_t majority(const std::vector<std::size_t>& counts) const {
    std::size_t best = 0;
    for (std::size_t c = 1; c < counts.size(); ++c) {
      if (counts[c] > counts[best]) best = c;
    }
    return best;
  }

  std::vector<std::size_t> candidate_features() {
    if (features_per_split_ >= n_features_ || rng_ == nullptr) return feature_pool_;
    // Partial Fisher-Yates draw of distinct features, then restored to index order.
    std::vector<std::size_t> pool = feature_pool_;
    for (std::size_t i = 0; i < features_per_split_; ++i) {
      const auto j = i + static_cast<std::size_t>(rng_->uniform_index(n_features_ - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(features_per_split_);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

  // Scans one feature; returns the best gain ratio and, when `wanted` is
  // given, the first threshold reaching it.
  std::optional<CandidateSplit> scan_feature(std::size_t feature, const std::vector<std::size_t>& samples,
                                    const std::vector<std::size_t>& parent_counts,
                                    double parent_entropy, std::optional<double> wanted) const {
    const std::size_t n = samples.size();
    std::vector<std::pair<double, std::size_t>> values;
    values.reserve(n);
    for (auto r : samples) values.emplace_back(columns_.at(feature, r), matrix_.rows[r].label);
    std::sort(values.begin(), values.end());
    if (values.front().first == values.back().first) return std::nullopt;

    std::vector<std::size_t> left(n_classes_, 0);
    std::vector<std::size_t> right = parent_counts;
    std::optional<CandidateSplit> best;
    const double total = static_cast<double>(n);
    for (std::size_t i = 1; i < n; ++i) {
      ++left[values[i - 1].second];
      --right[values[i - 1].second];
      if (values[i - 1].first == values[i].first) continue;
      if (i < spec_.min_leaf || n - i < spec_.min_leaf) continue;
      const double pl = static_cast<double>(i) / total;
      const double pr = static_cast<double>(n - i) / total;
      const double gain = parent_entropy - pl * entropy(left) - pr * entropy(right);
      if (!(gain > kTieEpsilon)) continue;
      const double split_info = -pl * std::log2(pl) - pr * std::log2(pr);
      const double ratio = gain / split_info;
      double threshold = 0.5 * (values[i - 1].first + values[i].first);
      if (threshold >= values[i].first) threshold = values[i - 1].first;
      if (wanted) {
        if (ratio >= *wanted - kTieEpsilon) return CandidateSplit{feature, threshold, ratio};
      } else if (!best || ratio > best->gain_ratio) {
        best = CandidateSplit{feature, threshold, ratio};
      }
    }
    return best;
  }

  std::optional<CandidateSplit> best_split(const std::vector<std::size_t>& samples,
                                  const std::vector<std::size_t>& counts) {
    const double parent_entropy = entropy(counts);
    const auto features = candidate_features();
    std::vector<double> per_feature(features.size(), -1.0);
    double top = -1.0;
    for (std::size_t f = 0; f < features.size(); ++f) {
      if (auto s = scan_feature(features[f], samples, counts, parent_entropy, std::nullopt)) {
        per_feature[f] = s->gain_ratio;
        top = std::max(top, s->gain_ratio);
      }
    }
    if (top < 0.0) return std::nullopt;
    for (std::size_t f = 0; f < features.size(); ++f) {
      if (per_feature[f] >= top - kTieEpsilon) {
        return scan_feature(features[f], samples, counts, parent_entropy, top);
      }
    }
    return std::nullopt;
  }

  std::size_t grow(DecisionTree& tree, std::vector<std::size_t> samples, std::size_t depth) {
    const std::size_t id = tree.nodes.size();
    tree.nodes.emplace_back();
    auto counts = histogram(samples);
    tree.nodes[id].label = majority(counts);
    tree.nodes[id].class_counts = counts;

    const bool pure = std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }) <= 1;
    if (pure || samples.size() < 2 * spec_.min_leaf ||
        (spec_.max_depth > 0 && depth >= spec_.max_depth)) {
      return id;
    }
    auto split = best_split(samples, counts);
    if (!split) return id;

    std::vector<std::size_t> left_rows;
    std::vector<std::size_t> right_rows;
    for (auto r : samples) {
      (columns_.at(split->feature, r) <= split->threshold ? left_rows : right_rows).push_back(r);
    }
    samples.clear();
    samples.shrink_to_fit();
    const std::size_t left = grow(tree, std::move(left_rows), depth + 1);
    const std::size_t right = grow(tree, std::move(right_rows), depth + 1);
    auto& node = tree.nodes[id];
    node.feature = static_cast<std::int64_t>(split->feature);
    node.threshold = split->threshold;
    node.left = left;
    node.right = right;
    return id;
  }

  const TermDocMatrix& matrix_;
  const DenseColumns& columns_;
  TreeSpec spec_;
  std::size_t n_classes_;
  std::size_t n_features_;
  std::size_t features_per_split_;
  Rng* rng_;
  std::vector<std::size_t> feature_pool_;
};

double feature_value(const SparseVector& x, std::size_t feature) {
  auto it = std::lower_bound(x.begin(), x.end(), feature,
                             [](const auto& e, std::size_t f) { return e.column < f; });
  return it != x.end() && it->column == feature ? it->value : 0.0;
}

std::vector<std::size_t> all_rows(const TermDocMatrix& matrix) {
  std::vector<std::size_t> rows(matrix.rows.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return rows;
}

}  // namespace

const TreeNode& DecisionTree::leaf_for(const SparseVector& x) const {
  std::size_t id = 0;
  while (!nodes[id].is_leaf()) {
    const auto& node = nodes[id];
    id = feature_value(x, static_cast<std::size_t>(node.feature)) <= node.threshold ? node.left
                                                                                     : node.right;
  }
  return nodes[id];
}

std::size_t DecisionTree::depth() const {
  std::vector<std::size_t> level(nodes.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    deepest = std::max(deepest, level[id]);
    if (!nodes[id].is_leaf()) {
      level[nodes[id].left] = level[id] + 1;
      level[nodes[id].right] = level[id] + 1;
    }
  }
  return deepest;
}

TreeModel c45_train(const TermDocMatrix& matrix, const TreeSpec& spec) {
  if (matrix.rows.empty()) throw InvalidArgument("C45: empty training matrix");
  if (spec.min_leaf < 1) throw InvalidArgument("C45: min_leaf must be >= 1");
  DenseColumns columns(matrix);
  TreeBuilder builder(matrix, columns, spec, matrix.dimension(), nullptr);
  return TreeModel{spec, builder.build(all_rows(matrix))};
}

ForestModel rf_train(const TermDocMatrix& matrix, const ForestSpec& spec) {
  if (matrix.rows.empty()) throw InvalidArgument("RF: empty training matrix");
  if (spec.n_trees < 1) throw InvalidArgument("RF: n_trees must be >= 1");
  const std::size_t n_features = matrix.dimension();
  const std::size_t per_split =
      spec.features_per_split > 0
          ? std::min(spec.features_per_split, n_features)
          : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n_features))));

  DenseColumns columns(matrix);
  ForestModel model;
  model.spec = spec;
  const std::size_t n = matrix.rows.size();
  for (std::size_t t = 0; t < spec.n_trees; ++t) {
    const std::uint64_t seed = derive_seed(spec.seed, t);
    Rng rng(seed);
    std::vector<std::size_t> sample;
    if (spec.bootstrap) {
      sample.resize(n);
      for (auto& r : sample) r = static_cast<std::size_t>(rng.uniform_index(n));
      std::sort(sample.begin(), sample.end());
    } else {
      sample = all_rows(matrix);
    }
    TreeBuilder builder(matrix, columns, spec.tree, per_split, &rng);
    model.trees.push_back(builder.build(std::move(sample)));
    model.tree_seeds.push_back(seed);
  }
  return model;
}

Prediction tree_predict(const DecisionTree& tree, const SparseVector& x, std::size_t n_classes) {
  const auto& leaf = tree.leaf_for(x);
  Prediction p;
  p.scores.assign(n_classes, 0.0);
  const double total = static_cast<double>(
      std::accumulate(leaf.class_counts.begin(), leaf.class_counts.end(), std::size_t{0}));
  for (std::size_t c = 0; c < n_classes && c < leaf.class_counts.size(); ++c) {
    p.scores[c] = total > 0 ? static_cast<double>(leaf.class_counts[c]) / total : 0.0;
  }
  p.label = leaf.label;
  return p;
}

Prediction forest_predict(const ForestModel& model, const SparseVector& x, std::size_t n_classes) {
  Prediction p;
  p.scores.assign(n_classes, 0.0);
  for (const auto& tree : model.trees) p.scores[tree.leaf_for(x).label] += 1.0;
  p.label = argmax(p.scores);
  return p;
}

}  // namespace textclf
