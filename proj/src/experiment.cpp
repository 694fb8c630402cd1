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

#include "textclf/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "textclf/error.hpp"
#include "textclf/model_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace textclf {
namespace {

constexpr const char* kModelVersion = "1";

// Runs one pipeline stage, prefixing any library error with the stage name.
template <typename F>
auto stage(std::string_view name, F&& body) -> decltype(body()) {
  const std::string prefix = std::string(name) + ": ";
  try {
    return body();
  } catch (const IoError& e) {
    throw IoError(prefix + e.what());
  } catch (const DataError& e) {
    throw DataError(prefix + e.what());
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(prefix + e.what());
  }
}

std::size_t category_index(const std::vector<std::string>& categories, const std::string& label) {
  auto it = std::lower_bound(categories.begin(), categories.end(), label);
  if (it == categories.end() || *it != label) throw DataError("unknown category '" + label + "'");
  return static_cast<std::size_t>(it - categories.begin());
}

bool spec_has_seed(const ModelSpec& spec) {
  return std::holds_alternative<SvmSpec>(spec) || std::holds_alternative<ForestSpec>(spec);
}

void set_seed(ModelSpec& spec, std::uint64_t seed) {
  if (auto* s = std::get_if<SvmSpec>(&spec)) s->seed = seed;
  if (auto* s = std::get_if<ForestSpec>(&spec)) s->seed = seed;
}

std::string describe_k(std::size_t k) { return "k=" + std::to_string(k); }

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

ExperimentConfig config_from_json(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw DataError("config: top level must be a JSON object");
  static const std::set<std::string> known = {"corpus",     "stopwords", "train_fraction",
                                              "seed",       "feature_counts", "classifiers",
                                              "output_dir", "timing"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw DataError("config: unknown field '" + key + "'");
  }
  auto resolve = [&](const std::string& p) {
    fs::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };

  ExperimentConfig c;
  try {
    if (j.contains("corpus")) c.corpus = resolve(j.at("corpus").get<std::string>());
    if (j.contains("stopwords")) {
      c.stopwords = j.at("stopwords").get<std::string>();
      if (c.stopwords != "builtin" && c.stopwords != "none") c.stopwords = resolve(c.stopwords).string();
    }
    if (j.contains("train_fraction")) c.train_fraction = j.at("train_fraction").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("feature_counts")) c.feature_counts = j.at("feature_counts").get<std::vector<std::size_t>>();
    if (j.contains("output_dir")) c.output_dir = resolve(j.at("output_dir").get<std::string>());
    if (j.contains("timing")) c.timing = j.at("timing").get<bool>();
    if (j.contains("classifiers")) {
      c.classifiers.clear();
      for (const auto& entry : j.at("classifiers")) {
        json spec_json = entry.is_string() ? json{{"kind", entry}} : entry;
        ModelSpec spec = spec_from_json(spec_json);
        if (spec_has_seed(spec) && !spec_json.contains("seed")) set_seed(spec, c.seed);
        c.classifiers.push_back(spec);
      }
    } else {
      for (auto& spec : c.classifiers) set_seed(spec, c.seed);
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("config: ") + e.what());
  }
  validate(c);
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json classifiers = json::array();
  for (const auto& spec : c.classifiers) {
    json s = spec_to_json(spec);
    s["kind"] = to_string(kind_of(spec));
    classifiers.push_back(std::move(s));
  }
  return {{"corpus", c.corpus.generic_string()},
          {"stopwords", c.stopwords},
          {"train_fraction", c.train_fraction},
          {"seed", c.seed},
          {"feature_counts", c.feature_counts},
          {"classifiers", std::move(classifiers)},
          {"output_dir", c.output_dir.generic_string()},
          {"timing", c.timing}};
}

void validate(const ExperimentConfig& c) {
  if (c.feature_counts.empty()) throw DataError("config: feature_counts is empty");
  for (std::size_t i = 0; i < c.feature_counts.size(); ++i) {
    if (c.feature_counts[i] == 0) throw DataError("config: feature counts must be positive");
    if (i > 0 && c.feature_counts[i] <= c.feature_counts[i - 1]) {
      throw DataError("config: feature_counts must be strictly ascending");
    }
  }
  if (c.classifiers.empty()) throw DataError("config: no classifiers");
  if (!(c.train_fraction > 0.0 && c.train_fraction < 1.0)) {
    throw DataError("config: train_fraction must lie in (0, 1)");
  }
  for (const auto& spec : c.classifiers) {
    try {
      validate(spec);
    } catch (const InvalidArgument& e) {
      throw DataError(std::string("config: ") + e.what());
    }
  }
}

StopwordList load_stopwords(const std::string& source) {
  if (source == "builtin") return StopwordList::builtin();
  if (source == "none") return StopwordList::none();
  return StopwordList::from_file(source);
}

// ---------------------------------------------------------------------------
// Pipeline

Corpus load_split_corpus(const ExperimentConfig& config) {
  if (config.corpus.empty()) throw DataError("corpus: no corpus path given");
  Corpus corpus = stage("corpus", [&] { return load_corpus(config.corpus); });
  if (corpus.is_split()) return corpus;
  return stage("split", [&] { return stratified_split(corpus, config.train_fraction, config.seed); });
}

PreparedData prepare(const ExperimentConfig& config) {
  return prepare(config, load_split_corpus(config));
}

PreparedData prepare(const ExperimentConfig& config, const Corpus& corpus) {
  PreparedData data;
  data.corpus = corpus;
  data.stopwords = stage("preprocess", [&] { return load_stopwords(config.stopwords); });

  const auto& categories = corpus.categories();
  if (categories.size() < 2) throw DataError("corpus: need at least two categories");
  std::vector<LabeledStream> train_streams;
  std::vector<std::string> train_ids;
  std::vector<LabeledStream> test_streams;
  std::vector<std::string> test_ids;
  stage("preprocess", [&] {
    for (const auto& doc : corpus.documents()) {
      if (doc.split == Split::Unassigned) continue;
      LabeledStream s{preprocess_document(doc, data.stopwords), category_index(categories, doc.label)};
      if (doc.split == Split::Train) {
        train_streams.push_back(std::move(s));
        train_ids.push_back(doc.id);
      } else {
        test_streams.push_back(std::move(s));
        test_ids.push_back(doc.id);
      }
    }
    return 0;
  });
  if (train_streams.empty()) throw DataError("corpus: no training documents");

  data.train = stage("vectorize", [&] { return build_matrix(train_streams, train_ids, categories); });
  stage("vectorize", [&] {
    for (std::size_t i = 0; i < test_streams.size(); ++i) {
      data.test.push_back({test_ids[i], test_streams[i].label,
                           encode(test_streams[i].tokens, data.train.vocab, data.train.n_train)});
    }
    return 0;
  });
  data.ranking = stage("feature_select", [&] { return rank_terms(data.train); });
  return data;
}

TrainedPipeline fit(const PreparedData& data, const ModelSpec& spec, std::size_t k,
                    std::vector<std::string>* warnings) {
  if (k == 0) throw InvalidArgument("feature_select: k must be positive");
  const std::size_t vocab_size = data.train.vocab.size();
  std::size_t effective_k = k;
  if (k > vocab_size) {
    effective_k = vocab_size;
    if (warnings) {
      warnings->push_back(describe_k(k) + " exceeds the vocabulary size " + std::to_string(vocab_size) +
                          "; using k=" + std::to_string(vocab_size));
    }
  }
  TermDocMatrix selected =
      stage("feature_select", [&] { return select_top_k(data.train, data.ranking, effective_k); });

  TrainedPipeline p;
  p.model = stage("train", [&] { return train(selected, spec); });
  if (warnings) {
    if (const auto* svm = std::get_if<SvmModel>(&p.model.payload)) {
      for (const auto& m : svm->machines) {
        if (!m.converged) {
          warnings->push_back("SVM_SMO: solver for classes '" + p.model.categories[m.positive] + "' vs '" +
                              p.model.categories[m.negative] + "' did not converge");
        }
      }
    }
  }
  p.vocab = std::move(selected.vocab);
  p.n_train = data.train.n_train;
  p.stopwords = data.stopwords;
  switch (data.stopwords.source()) {
    case StopwordList::Source::Builtin:
      p.stopword_source = "builtin";
      break;
    case StopwordList::Source::File:
      p.stopword_source = "file";
      break;
    case StopwordList::Source::Inline:
      p.stopword_source = data.stopwords.size() == 0 ? "none" : "file";
      break;
  }
  p.requested_k = k;
  return p;
}

CellResult run_cell(const PreparedData& data, const ModelSpec& spec, std::size_t k) {
  CellResult cell;
  cell.pipeline = fit(data, spec, k, &cell.warnings);
  cell.report = stage("evaluate", [&] {
    const auto& categories = data.train.categories;
    std::vector<std::string> predicted;
    std::vector<std::string> real;
    for (const auto& row : data.test) {
      const DocVector v = project(row.vector, data.train.vocab, cell.pipeline.vocab);
      predicted.push_back(categories[predict(cell.pipeline.model, v).label]);
      real.push_back(categories[row.label]);
    }
    return make_report(confusion(predicted, real, categories));
  });
  return cell;
}

MetricsReport run_pipeline(const ExperimentConfig& config, const ModelSpec& spec, std::size_t k,
                           std::vector<std::string>* warnings) {
  const PreparedData data = prepare(config);
  auto cell = run_cell(data, spec, k);
  if (warnings) warnings->insert(warnings->end(), cell.warnings.begin(), cell.warnings.end());
  return cell.report;
}

Prediction classify(const TrainedPipeline& pipeline, std::string_view text) {
  const TokenStream tokens = preprocess_text(text, pipeline.stopwords);
  return predict(pipeline.model, encode(tokens, pipeline.vocab, pipeline.n_train));
}

MetricsReport evaluate_on(const TrainedPipeline& pipeline, std::span<const Document* const> docs) {
  if (docs.empty()) throw DataError("evaluate: no test documents");
  const auto& categories = pipeline.model.categories;
  std::vector<std::string> predicted;
  std::vector<std::string> real;
  for (const auto* doc : docs) {
    if (std::find(categories.begin(), categories.end(), doc->label) == categories.end()) {
      throw DataError("evaluate: document " + doc->id + " has category '" + doc->label +
                      "' unknown to the model");
    }
    predicted.push_back(categories[classify(pipeline, doc->text).label]);
    real.push_back(doc->label);
  }
  return make_report(confusion(predicted, real, categories));
}

// ---------------------------------------------------------------------------
// Persistence

json pipeline_to_json(const TrainedPipeline& p) {
  json model = model_to_json(p.model);
  json stopwords = {{"source", p.stopword_source}};
  if (p.stopword_source == "file") {
    stopwords["words"] = std::vector<std::string>(p.stopwords.words().begin(), p.stopwords.words().end());
  }
  json out = {{"version", kModelVersion},
              {"kind", model.at("kind")},
              {"hyperparameters", model.at("hyperparameters")},
              {"vocabulary_hash", p.vocab.hash(p.n_train)},
              {"vocabulary", {{"n_train", p.n_train}, {"terms", p.vocab.terms()}, {"doc_freq", p.vocab.doc_freq()}}},
              {"preprocessing", {{"stopwords", std::move(stopwords)}}},
              {"feature_count", p.requested_k},
              {"categories", model.at("categories")},
              {"dimension", model.at("dimension")},
              {"payload", model.at("payload")}};
  return out;
}

TrainedPipeline pipeline_from_json(const json& j) {
  try {
    if (j.value("version", std::string{}) != kModelVersion) {
      throw DataError("model: unsupported version (expected \"1\")");
    }
    TrainedPipeline p;
    const auto& v = j.at("vocabulary");
    p.n_train = v.at("n_train").get<std::size_t>();
    try {
      p.vocab = Vocabulary(v.at("terms").get<std::vector<std::string>>(),
                           v.at("doc_freq").get<std::vector<std::size_t>>());
    } catch (const InvalidArgument& e) {
      throw DataError(std::string("model: ") + e.what());
    }
    if (p.vocab.hash(p.n_train) != j.at("vocabulary_hash").get<std::string>()) {
      throw DataError("model: vocabulary hash mismatch; refusing to load");
    }
    for (auto df : p.vocab.doc_freq()) {
      if (df > p.n_train) throw DataError("model: document frequency exceeds n_train");
    }
    const auto& stop = j.at("preprocessing").at("stopwords");
    p.stopword_source = stop.at("source").get<std::string>();
    if (p.stopword_source == "builtin") {
      p.stopwords = StopwordList::builtin();
    } else if (p.stopword_source == "none") {
      p.stopwords = StopwordList::none();
    } else if (p.stopword_source == "file") {
      p.stopwords = StopwordList(stop.at("words").get<std::vector<std::string>>(), StopwordList::Source::File);
    } else {
      throw DataError("model: unknown stopword source '" + p.stopword_source + "'");
    }
    p.requested_k = j.at("feature_count").get<std::size_t>();
    p.model = model_from_json(j);
    if (p.model.dimension != p.vocab.size()) {
      throw DataError("model: dimension does not match the vocabulary size");
    }
    return p;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed model JSON: ") + e.what());
  }
}

void write_json_file(const json& j, const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void save_pipeline(const TrainedPipeline& pipeline, const fs::path& path) {
  write_json_file(pipeline_to_json(pipeline), path);
}

TrainedPipeline load_pipeline(const fs::path& path) { return pipeline_from_json(read_json_file(path)); }

// ---------------------------------------------------------------------------
// Sweep

SweepResult run_sweep(const ExperimentConfig& config) {
  validate(config);
  return run_sweep(config, prepare(config));
}

SweepResult run_sweep(const ExperimentConfig& config, const PreparedData& data) {
  validate(config);
  SweepResult result;
  for (const auto& spec : config.classifiers) {
    for (std::size_t k : config.feature_counts) {
      SweepRow row;
      row.kind = kind_of(spec);
      row.k = k;
      const auto start = std::chrono::steady_clock::now();
      try {
        auto cell = run_cell(data, spec, k);
        row.macro_f = cell.report.macro_f;
        row.accuracy = cell.report.accuracy;
        for (auto& w : cell.warnings) {
          result.warnings.push_back(std::string(to_string(row.kind)) + " " + describe_k(k) + ": " + w);
        }
        result.reports.emplace_back(std::move(cell.report));
      } catch (const Error& e) {
        row.error = e.what();
        result.reports.emplace_back(std::nullopt);
      }
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

void write_sweep_csv(const SweepResult& result, bool timing, std::ostream& out) {
  out << "classifier,k,macro_f,accuracy,seconds\n";
  std::ostringstream line;
  line << std::fixed << std::setprecision(6);
  for (const auto& row : result.rows) {
    line.str("");
    line << to_string(row.kind) << ',' << row.k << ',';
    if (row.error.empty()) {
      line << row.macro_f << ',' << row.accuracy << ',';
    } else {
      line << "NA,NA,";
    }
    line << (timing ? row.seconds : 0.0) << '\n';
    out << line.str();
  }
}

void write_sweep_outputs(const SweepResult& result, const ExperimentConfig& config) {
  fs::create_directories(config.output_dir / "reports");
  {
    std::ofstream csv(config.output_dir / "sweep.csv", std::ios::binary);
    if (!csv) throw IoError("cannot write " + (config.output_dir / "sweep.csv").string());
    write_sweep_csv(result, config.timing, csv);
  }
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& row = result.rows[i];
    const auto name = std::string(to_string(row.kind)) + "_k" + std::to_string(row.k) + ".json";
    json report = result.reports[i] ? report_to_json(*result.reports[i]) : json{{"error", row.error}};
    write_json_file(report, config.output_dir / "reports" / name);
  }
}

}  // namespace textclf
