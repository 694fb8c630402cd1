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
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "textclf/classifiers.hpp"
#include "textclf/corpus.hpp"
#include "textclf/evaluate.hpp"
#include "textclf/feature_select.hpp"
#include "textclf/preprocess.hpp"
#include "textclf/vectorize.hpp"

namespace textclf {

inline constexpr std::uint64_t kDefaultSeed = 42;

struct ExperimentConfig {
  std::filesystem::path corpus;
  // "builtin", "none", or a path to a stopword file.
  std::string stopwords = "builtin";
  // Used only for layout-A corpora; layout B carries its own split.
  double train_fraction = 0.6;
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::size_t> feature_counts = {30, 50, 100, 200, 300, 500, 700};
  std::vector<ModelSpec> classifiers = {NbSpec{}, KnnSpec{}, SvmSpec{}, TreeSpec{}, ForestSpec{}};
  std::filesystem::path output_dir = "sweep_out";
  // Measured wall time in the sweep CSV; off by default so outputs are reproducible byte for byte.
  bool timing = false;
};

// Every field is optional. Relative paths are resolved against base_dir.
ExperimentConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
nlohmann::json config_to_json(const ExperimentConfig& config);
void validate(const ExperimentConfig& config);

StopwordList load_stopwords(const std::string& source);

// Loads the corpus and applies the stratified split unless the corpus came split (layout B).
Corpus load_split_corpus(const ExperimentConfig& config);

// Vocabulary, weights and CHI ranking fitted on the training split, plus the
// encoded test split. Shared by every sweep cell.
struct PreparedData {
  Corpus corpus;
  StopwordList stopwords;
  TermDocMatrix train;
  std::vector<MatrixRow> test;
  ChiRanking ranking;
};

PreparedData prepare(const ExperimentConfig& config);
PreparedData prepare(const ExperimentConfig& config, const Corpus& split_corpus);

// A fitted pipeline: everything needed to classify raw text.
struct TrainedPipeline {
  Model model;
  Vocabulary vocab;  // selected terms with training document frequencies
  std::size_t n_train = 0;
  std::string stopword_source;
  StopwordList stopwords;
  std::size_t requested_k = 0;
};

struct CellResult {
  TrainedPipeline pipeline;
  MetricsReport report;
  std::vector<std::string> warnings;
};

// Selects the top k terms (clamped to |V| with a warning), trains, and scores the test split.
CellResult run_cell(const PreparedData& data, const ModelSpec& spec, std::size_t k);
TrainedPipeline fit(const PreparedData& data, const ModelSpec& spec, std::size_t k,
                    std::vector<std::string>* warnings = nullptr);
MetricsReport run_pipeline(const ExperimentConfig& config, const ModelSpec& spec, std::size_t k,
                           std::vector<std::string>* warnings = nullptr);

Prediction classify(const TrainedPipeline& pipeline, std::string_view text);
MetricsReport evaluate_on(const TrainedPipeline& pipeline, std::span<const Document* const> docs);

// Self-describing model file: version "1", kind, hyperparameters,
// vocabulary and its hash, preprocessing, payload.
nlohmann::json pipeline_to_json(const TrainedPipeline& pipeline);
TrainedPipeline pipeline_from_json(const nlohmann::json& j);
void save_pipeline(const TrainedPipeline& pipeline, const std::filesystem::path& path);
TrainedPipeline load_pipeline(const std::filesystem::path& path);

struct SweepRow {
  ModelKind kind;
  std::size_t k = 0;
  double macro_f = 0.0;
  double accuracy = 0.0;
  double seconds = 0.0;
  std::string error;  // non-empty when the cell failed
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<std::optional<MetricsReport>> reports;  // parallel to rows
  std::vector<std::string> warnings;
};

SweepResult run_sweep(const ExperimentConfig& config);
SweepResult run_sweep(const ExperimentConfig& config, const PreparedData& data);

// Header `classifier,k,macro_f,accuracy,seconds`, 6-decimal reals, LF endings.
void write_sweep_csv(const SweepResult& result, bool timing, std::ostream& out);
// sweep.csv and reports/<KIND>_k<k>.json under config.output_dir.
void write_sweep_outputs(const SweepResult& result, const ExperimentConfig& config);

// Serializes JSON with 2-space indentation and a trailing newline.
void write_json_file(const nlohmann::json& j, const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace textclf
