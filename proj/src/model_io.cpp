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

#include "textclf/model_io.hpp"

#include <cmath>
#include <set>

#include "textclf/error.hpp"

using nlohmann::json;

namespace textclf {
namespace {

std::string_view similarity_name(Similarity s) {
  return s == Similarity::Cosine ? "cosine" : "euclidean";
}

Similarity parse_similarity(const std::string& name) {
  if (name == "cosine") return Similarity::Cosine;
  if (name == "euclidean") return Similarity::Euclidean;
  throw DataError("unknown KNN similarity '" + name + "'");
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool ok = key == "kind";
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw DataError("unknown hyperparameter '" + key + "'");
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) {
    try {
      out = it->get<T>();
    } catch (const json::exception&) {
      throw DataError(std::string("hyperparameter '") + key + "' has the wrong type");
    }
  }
}

json tree_params(const TreeSpec& s) { return {{"min_leaf", s.min_leaf}, {"max_depth", s.max_depth}}; }

json sparse_to_json(const SparseVector& v) {
  json out = json::array();
  for (const auto& e : v) out.push_back({e.column, e.value});
  return out;
}

SparseVector sparse_from_json(const json& j) {
  SparseVector v;
  for (const auto& e : j) v.push_back({e.at(0).get<ColumnId>(), e.at(1).get<double>()});
  return v;
}

json tree_to_json(const DecisionTree& tree) {
  json nodes = json::array();
  for (const auto& n : tree.nodes) {
    json node = {{"label", n.label}, {"class_counts", n.class_counts}};
    if (!n.is_leaf()) {
      node["feature"] = n.feature;
      node["threshold"] = n.threshold;
      node["left"] = n.left;
      node["right"] = n.right;
    }
    nodes.push_back(std::move(node));
  }
  return nodes;
}

DecisionTree tree_from_json(const json& j, std::size_t dimension, std::size_t n_classes) {
  DecisionTree tree;
  for (const auto& n : j) {
    TreeNode node;
    node.label = n.at("label").get<std::size_t>();
    node.class_counts = n.at("class_counts").get<std::vector<std::size_t>>();
    if (n.contains("feature")) {
      node.feature = n.at("feature").get<std::int64_t>();
      node.threshold = n.at("threshold").get<double>();
      node.left = n.at("left").get<std::size_t>();
      node.right = n.at("right").get<std::size_t>();
    }
    tree.nodes.push_back(std::move(node));
  }
  if (tree.nodes.empty()) throw DataError("model: empty decision tree");
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    const auto& node = tree.nodes[id];
    if (node.label >= n_classes) throw DataError("model: tree leaf label out of range");
    if (node.is_leaf()) continue;
    // Children always follow their parent, which rules out cycles.
    if (static_cast<std::size_t>(node.feature) >= dimension || node.left <= id || node.right <= id ||
        node.left >= tree.nodes.size() || node.right >= tree.nodes.size()) {
      throw DataError("model: malformed decision tree");
    }
  }
  return tree;
}

struct SpecWriter {
  json operator()(const NbSpec& s) const { return {{"alpha", s.alpha}}; }
  json operator()(const KnnSpec& s) const {
    return {{"k", s.k}, {"similarity", similarity_name(s.similarity)}};
  }
  json operator()(const SvmSpec& s) const {
    return {{"C", s.c}, {"tolerance", s.tolerance}, {"max_passes", s.max_passes}, {"seed", s.seed}};
  }
  json operator()(const TreeSpec& s) const { return tree_params(s); }
  json operator()(const ForestSpec& s) const {
    json j = tree_params(s.tree);
    j["n_trees"] = s.n_trees;
    j["features_per_split"] = s.features_per_split;
    j["bootstrap"] = s.bootstrap;
    j["seed"] = s.seed;
    return j;
  }
};

ModelSpec spec_of(const Model& model) {
  return std::visit([](const auto& m) -> ModelSpec { return m.spec; }, model.payload);
}

}  // namespace

json spec_to_json(const ModelSpec& spec) { return std::visit(SpecWriter{}, spec); }

ModelSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw DataError("classifier spec must be a JSON object");
  const auto kind_name = j.value("kind", std::string{});
  const auto kind = parse_model_kind(kind_name);
  if (!kind) throw DataError("unknown classifier kind '" + kind_name + "'");
  ModelSpec spec = default_spec(*kind);
  switch (*kind) {
    case ModelKind::NaiveBayes: {
      reject_unknown(j, {"alpha"});
      auto& s = std::get<NbSpec>(spec);
      read(j, "alpha", s.alpha);
      break;
    }
    case ModelKind::Knn: {
      reject_unknown(j, {"k", "similarity"});
      auto& s = std::get<KnnSpec>(spec);
      read(j, "k", s.k);
      std::string similarity = std::string(similarity_name(s.similarity));
      read(j, "similarity", similarity);
      s.similarity = parse_similarity(similarity);
      break;
    }
    case ModelKind::SvmSmo: {
      reject_unknown(j, {"C", "tolerance", "max_passes", "seed"});
      auto& s = std::get<SvmSpec>(spec);
      read(j, "C", s.c);
      read(j, "tolerance", s.tolerance);
      read(j, "max_passes", s.max_passes);
      read(j, "seed", s.seed);
      break;
    }
    case ModelKind::C45: {
      reject_unknown(j, {"min_leaf", "max_depth"});
      auto& s = std::get<TreeSpec>(spec);
      read(j, "min_leaf", s.min_leaf);
      read(j, "max_depth", s.max_depth);
      break;
    }
    case ModelKind::RandomForest: {
      reject_unknown(j, {"n_trees", "features_per_split", "bootstrap", "seed", "min_leaf", "max_depth"});
      auto& s = std::get<ForestSpec>(spec);
      read(j, "n_trees", s.n_trees);
      read(j, "features_per_split", s.features_per_split);
      read(j, "bootstrap", s.bootstrap);
      read(j, "seed", s.seed);
      read(j, "min_leaf", s.tree.min_leaf);
      read(j, "max_depth", s.tree.max_depth);
      break;
    }
  }
  try {
    validate(spec);
  } catch (const InvalidArgument& e) {
    throw DataError(e.what());
  }
  return spec;
}

json model_to_json(const Model& model) {
  json payload;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NbModel>) {
          payload = {{"log_prior", m.log_prior}, {"log_likelihood", m.log_likelihood}};
        } else if constexpr (std::is_same_v<T, KnnModel>) {
          json rows = json::array();
          for (const auto& r : m.rows) rows.push_back(sparse_to_json(r));
          payload = {{"rows", std::move(rows)}, {"labels", m.labels}};
        } else if constexpr (std::is_same_v<T, SvmModel>) {
          json machines = json::array();
          for (const auto& svm : m.machines) {
            SparseVector w;
            for (std::size_t i = 0; i < svm.w.size(); ++i) {
              if (svm.w[i] != 0.0) w.push_back({static_cast<ColumnId>(i), svm.w[i]});
            }
            json support = json::array();
            for (const auto& [row, a] : svm.support) support.push_back({row, a});
            machines.push_back({{"positive", svm.positive},
                                {"negative", svm.negative},
                                {"w", sparse_to_json(w)},
                                {"b", svm.b},
                                {"converged", svm.converged},
                                {"support", std::move(support)}});
          }
          payload = {{"machines", std::move(machines)}};
        } else if constexpr (std::is_same_v<T, TreeModel>) {
          payload = {{"nodes", tree_to_json(m.tree)}};
        } else {
          json trees = json::array();
          for (std::size_t t = 0; t < m.trees.size(); ++t) {
            trees.push_back({{"seed", m.tree_seeds[t]}, {"nodes", tree_to_json(m.trees[t])}});
          }
          payload = {{"trees", std::move(trees)}};
        }
      },
      model.payload);

  return {{"kind", to_string(model.kind())},
          {"hyperparameters", spec_to_json(spec_of(model))},
          {"categories", model.categories},
          {"dimension", model.dimension},
          {"payload", std::move(payload)}};
}

Model model_from_json(const json& j) {
  try {
    json spec_json = j.at("hyperparameters");
    spec_json["kind"] = j.at("kind");
    const ModelSpec spec = spec_from_json(spec_json);

    Model model;
    model.categories = j.at("categories").get<std::vector<std::string>>();
    model.dimension = j.at("dimension").get<std::size_t>();
    const std::size_t n_classes = model.categories.size();
    if (n_classes < 2) throw DataError("model: fewer than two categories");
    const auto& p = j.at("payload");

    switch (kind_of(spec)) {
      case ModelKind::NaiveBayes: {
        NbModel m;
        m.spec = std::get<NbSpec>(spec);
        m.log_prior = p.at("log_prior").get<std::vector<double>>();
        m.log_likelihood = p.at("log_likelihood").get<std::vector<std::vector<double>>>();
        if (m.log_prior.size() != n_classes || m.log_likelihood.size() != n_classes) {
          throw DataError("model: naive Bayes tables do not match the category count");
        }
        for (const auto& row : m.log_likelihood) {
          if (row.size() != model.dimension) throw DataError("model: likelihood table has wrong width");
        }
        model.payload = std::move(m);
        break;
      }
      case ModelKind::Knn: {
        KnnModel m;
        m.spec = std::get<KnnSpec>(spec);
        for (const auto& r : p.at("rows")) {
          m.rows.push_back(sparse_from_json(r));
          m.norms.push_back(norm(m.rows.back()));
        }
        m.labels = p.at("labels").get<std::vector<std::size_t>>();
        if (m.labels.size() != m.rows.size()) throw DataError("model: KNN labels do not match rows");
        for (auto label : m.labels) {
          if (label >= n_classes) throw DataError("model: KNN label out of range");
        }
        model.payload = std::move(m);
        break;
      }
      case ModelKind::SvmSmo: {
        SvmModel m;
        m.spec = std::get<SvmSpec>(spec);
        for (const auto& mj : p.at("machines")) {
          BinarySvm svm;
          svm.positive = mj.at("positive").get<std::size_t>();
          svm.negative = mj.at("negative").get<std::size_t>();
          if (svm.positive >= n_classes || svm.negative >= n_classes) {
            throw DataError("model: SVM class index out of range");
          }
          svm.w.assign(model.dimension, 0.0);
          for (const auto& e : sparse_from_json(mj.at("w"))) {
            if (e.column >= model.dimension) throw DataError("model: SVM weight column out of range");
            svm.w[e.column] = e.value;
          }
          svm.b = mj.at("b").get<double>();
          svm.converged = mj.at("converged").get<bool>();
          for (const auto& s : mj.at("support")) {
            svm.support.emplace_back(s.at(0).get<std::size_t>(), s.at(1).get<double>());
          }
          m.machines.push_back(std::move(svm));
        }
        model.payload = std::move(m);
        break;
      }
      case ModelKind::C45: {
        model.payload = TreeModel{std::get<TreeSpec>(spec),
                                  tree_from_json(p.at("nodes"), model.dimension, n_classes)};
        break;
      }
      case ModelKind::RandomForest: {
        ForestModel m;
        m.spec = std::get<ForestSpec>(spec);
        for (const auto& t : p.at("trees")) {
          m.tree_seeds.push_back(t.at("seed").get<std::uint64_t>());
          m.trees.push_back(tree_from_json(t.at("nodes"), model.dimension, n_classes));
        }
        if (m.trees.empty()) throw DataError("model: forest has no trees");
        model.payload = std::move(m);
        break;
      }
    }
    return model;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed model JSON: ") + e.what());
  }
}

}  // namespace textclf
