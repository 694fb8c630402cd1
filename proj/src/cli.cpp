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

#include "textclf/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "textclf/error.hpp"
#include "textclf/experiment.hpp"
#include "textclf/model_io.hpp"
#include "textclf/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace textclf {
namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

// Flags shared by the subcommands that read a corpus.
struct CorpusFlags {
  std::string config;
  std::string corpus;
  std::string stopwords;
  double train_fraction = 0.6;
  std::uint64_t seed = kDefaultSeed;
  CLI::Option* corpus_opt = nullptr;
  CLI::Option* stopwords_opt = nullptr;
  CLI::Option* fraction_opt = nullptr;
  CLI::Option* seed_opt = nullptr;

  void attach(CLI::App* cmd, bool with_config) {
    if (with_config) cmd->add_option("--config", config, "experiment config JSON");
    corpus_opt = cmd->add_option("--corpus", corpus, "corpus root directory");
    stopwords_opt = cmd->add_option("--stopwords", stopwords, "builtin, none, or a stopword file");
    fraction_opt = cmd->add_option("--train-fraction", train_fraction, "training share for unsplit corpora")
                       ->check(CLI::Range(0.0, 1.0));
    seed_opt = cmd->add_option("--seed", seed, "split and classifier seed (default 42)");
  }

  // Config file first, then explicit flags on top.
  ExperimentConfig resolve() const {
    ExperimentConfig c;
    if (!config.empty()) {
      const fs::path path(config);
      c = config_from_json(read_json_file(path), path.parent_path());
    }
    if (corpus_opt->count()) c.corpus = corpus;
    if (stopwords_opt->count()) c.stopwords = stopwords;
    if (fraction_opt->count()) c.train_fraction = train_fraction;
    if (seed_opt->count()) {
      c.seed = seed;
      for (auto& spec : c.classifiers) {
        if (auto* s = std::get_if<SvmSpec>(&spec)) s->seed = seed;
        if (auto* s = std::get_if<ForestSpec>(&spec)) s->seed = seed;
      }
    }
    if (c.corpus.empty()) throw InvalidArgument("no corpus given (use --corpus or a config file)");
    return c;
  }
};

// "key=value" pairs become a JSON object; values parse as JSON when they can.
json parse_assignments(const std::vector<std::string>& items) {
  json out = json::object();
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidArgument("expected key=value, got '" + item + "'");
    const std::string value = item.substr(eq + 1);
    json parsed = json::parse(value, nullptr, false);
    out[item.substr(0, eq)] = parsed.is_discarded() ? json(value) : parsed;
  }
  return out;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  return f;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (!is_valid_utf8(text)) throw DataError(path.string() + " is not valid UTF-8");
  return text;
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

int do_ingest(const CorpusFlags& flags, std::ostream& out) {
  const ExperimentConfig config = flags.resolve();
  const Corpus raw = load_corpus(config.corpus);
  const bool fixed = raw.is_split();
  const Corpus corpus = fixed ? raw : stratified_split(raw, config.train_fraction, config.seed);
  out << "corpus: " << config.corpus.generic_string() << '\n';
  if (fixed) {
    out << "layout: train/test directories\n";
  } else {
    out << "layout: category directories, split " << config.train_fraction << " seed " << config.seed << '\n';
  }
  out << "documents: " << corpus.size() << '\n';
  out << "categories: " << corpus.categories().size() << '\n';
  std::size_t train = 0;
  std::size_t test = 0;
  out << "category\ttrain\ttest\ttotal\n";
  for (const auto& c : corpus.counts()) {
    out << c.category << '\t' << c.train << '\t' << c.test << '\t' << c.train + c.test << '\n';
    train += c.train;
    test += c.test;
  }
  out << "total\t" << train << '\t' << test << '\t' << train + test << '\n';
  return 0;
}

struct TrainFlags {
  std::string classifier = "SVM_SMO";
  std::size_t k = 700;
  std::vector<std::string> params;
  std::string model_path;
};

int do_train(const CorpusFlags& flags, const TrainFlags& tf, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = flags.resolve();
  json spec_json = parse_assignments(tf.params);
  spec_json["kind"] = tf.classifier;
  ModelSpec spec = spec_from_json(spec_json);
  if (!spec_json.contains("seed")) {
    if (auto* s = std::get_if<SvmSpec>(&spec)) s->seed = config.seed;
    if (auto* s = std::get_if<ForestSpec>(&spec)) s->seed = config.seed;
  }
  const PreparedData data = prepare(config);
  std::vector<std::string> warnings;
  const TrainedPipeline pipeline = fit(data, spec, tf.k, &warnings);
  print_warnings(warnings, err);

  json j = pipeline_to_json(pipeline);
  j["split"] = {{"train_fraction", config.train_fraction}, {"seed", config.seed}};
  write_json_file(j, tf.model_path);
  out << "trained " << to_string(pipeline.model.kind()) << " on " << data.train.rows.size() << " documents, "
      << pipeline.vocab.size() << " features -> " << tf.model_path << '\n';
  return 0;
}

int do_predict(const std::string& model_path, const std::vector<std::string>& files, std::ostream& out) {
  const TrainedPipeline pipeline = load_pipeline(model_path);
  // Read everything first so a bad file fails before any output.
  std::vector<std::string> texts;
  for (const auto& f : files) texts.push_back(read_text(f));
  for (std::size_t i = 0; i < files.size(); ++i) {
    out << files[i] << '\t' << pipeline.model.categories[classify(pipeline, texts[i]).label] << '\n';
  }
  return 0;
}

int do_evaluate(const CorpusFlags& flags, const std::string& model_path, const std::string& out_path,
                std::ostream& out) {
  const json j = read_json_file(model_path);
  const TrainedPipeline pipeline = pipeline_from_json(j);
  ExperimentConfig config = flags.resolve();
  // The split recorded at training time applies unless overridden.
  if (j.contains("split")) {
    if (!flags.fraction_opt->count()) config.train_fraction = j["split"].value("train_fraction", 0.6);
    if (!flags.seed_opt->count()) config.seed = j["split"].value("seed", kDefaultSeed);
  }
  const Corpus corpus = load_split_corpus(config);
  const auto test = corpus.select(Split::Test);
  const MetricsReport report = evaluate_on(pipeline, test);
  const json rj = report_to_json(report);
  if (out_path.empty()) {
    out << rj.dump(2) << '\n';
  } else {
    write_json_file(rj, out_path);
    out << "macro_f " << std::fixed << std::setprecision(6) << report.macro_f << " accuracy " << report.accuracy
        << " -> " << out_path << '\n';
  }
  return 0;
}

int do_sweep(const CorpusFlags& flags, const std::string& output_dir, bool timing, std::ostream& out,
             std::ostream& err) {
  ExperimentConfig config = flags.resolve();
  if (!output_dir.empty()) config.output_dir = output_dir;
  if (timing) config.timing = true;
  const SweepResult result = run_sweep(config);
  print_warnings(result.warnings, err);
  write_sweep_outputs(result, config);
  std::size_t failed = 0;
  for (const auto& row : result.rows) {
    if (!row.error.empty()) {
      ++failed;
      err << "error: " << to_string(row.kind) << " k=" << row.k << ": " << row.error << '\n';
    }
  }
  out << result.rows.size() << " rows -> " << (config.output_dir / "sweep.csv").generic_string() << '\n';
  return failed == 0 ? 0 : kDataError;
}

int do_rank(const CorpusFlags& flags, const std::string& out_path, std::ostream& out) {
  const ExperimentConfig config = flags.resolve();
  const PreparedData data = prepare(config);
  if (out_path.empty()) {
    write_ranking_csv(data.ranking, out);
  } else {
    auto f = open_output(out_path);
    write_ranking_csv(data.ranking, f);
  }
  return 0;
}

int do_synth(const SyntheticSpec& spec, const std::string& root, bool split, double fraction, std::ostream& out) {
  if (fs::exists(root) && !fs::is_empty(root)) throw IoError(root + " exists and is not empty");
  const SyntheticCorpus synthetic = generate_synthetic(spec);
  const Corpus corpus = split ? stratified_split(synthetic.corpus, fraction, spec.seed) : synthetic.corpus;
  write_corpus(corpus, root);
  json planted = json::object();
  for (std::size_t c = 0; c < synthetic.categories.size(); ++c) planted[synthetic.categories[c]] = synthetic.planted[c];
  write_json_file({{"planted", planted}, {"noise", synthetic.noise}}, fs::path(root) / "vocabulary.json");
  out << corpus.size() << " documents -> " << root << '\n';
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Poet-style text classification toolkit", "textclf"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "expand all subcommand help");

  CorpusFlags ingest_flags, train_flags, eval_flags, sweep_flags, rank_flags;

  auto* ingest = app.add_subcommand("ingest", "validate a corpus and print per-category counts");
  ingest_flags.attach(ingest, true);

  TrainFlags tf;
  auto* train = app.add_subcommand("train", "fit one classifier and write the model JSON");
  train_flags.attach(train, true);
  train->add_option("--classifier", tf.classifier, "NB, KNN, SVM_SMO, C45 or RF")->capture_default_str();
  train->add_option("-k,--features", tf.k, "number of CHI-selected features")->capture_default_str();
  train->add_option("--set", tf.params, "hyperparameter key=value (repeatable)");
  train->add_option("--model", tf.model_path, "output model path")->required();

  std::string predict_model;
  std::vector<std::string> predict_files;
  auto* predict_cmd = app.add_subcommand("predict", "label text files with a saved model");
  predict_cmd->add_option("--model", predict_model, "model JSON")->required();
  predict_cmd->add_option("files", predict_files, "text files")->required();

  std::string eval_model, eval_out;
  auto* evaluate = app.add_subcommand("evaluate", "score a saved model on the test split");
  eval_flags.attach(evaluate, true);
  evaluate->add_option("--model", eval_model, "model JSON")->required();
  evaluate->add_option("--out", eval_out, "report JSON path (default: stdout)");

  std::string sweep_out;
  bool sweep_timing = false;
  auto* sweep = app.add_subcommand("sweep", "run every (classifier, k) cell and write CSV and reports");
  sweep_flags.attach(sweep, true);
  sweep->add_option("--output", sweep_out, "output directory (default: config output_dir)");
  sweep->add_flag("--timing", sweep_timing, "record wall time in the seconds column");

  std::string rank_out;
  auto* rank = app.add_subcommand("rank", "write the CHI ranking of the training vocabulary");
  rank_flags.attach(rank, true);
  rank->add_option("--out", rank_out, "CSV path (default: stdout)");

  SyntheticSpec synth_spec;
  std::string synth_root;
  bool synth_split = false;
  double synth_fraction = 0.6;
  auto* synth = app.add_subcommand("synth", "write a planted-vocabulary synthetic corpus");
  synth->add_option("--out", synth_root, "output directory")->required();
  synth->add_option("--seed", synth_spec.seed, "generator seed")->capture_default_str();
  synth->add_option("--docs-per-class", synth_spec.docs_per_class)->capture_default_str();
  synth->add_option("--classes", synth_spec.n_classes)->capture_default_str();
  synth->add_flag("--split", synth_split, "write the train/test layout");
  synth->add_option("--train-fraction", synth_fraction)->capture_default_str();

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("textclf");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto selected = app.get_subcommands();
    err << (selected.empty() ? app.help() : selected.front()->help());
    return kUsageError;
  }

  try {
    if (*ingest) return do_ingest(ingest_flags, out);
    if (*train) return do_train(train_flags, tf, out, err);
    if (*predict_cmd) return do_predict(predict_model, predict_files, out);
    if (*evaluate) return do_evaluate(eval_flags, eval_model, eval_out, out);
    if (*sweep) return do_sweep(sweep_flags, sweep_out, sweep_timing, out, err);
    if (*rank) return do_rank(rank_flags, rank_out, out);
    if (*synth) return do_synth(synth_spec, synth_root, synth_split, synth_fraction, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}

}  // namespace textclf
