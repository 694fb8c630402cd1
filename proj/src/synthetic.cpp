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

#include "textclf/synthetic.hpp"

#include <cstdio>
#include <fstream>
#include <set>

#include "textclf/error.hpp"
#include "textclf/preprocess.hpp"
#include "textclf/random.hpp"

namespace fs = std::filesystem;

namespace textclf {
namespace {

constexpr std::string_view kConsonants = "bdfgklmnprtvz";
constexpr std::string_view kVowels = "aiou";
// Filler that the builtin stopword list removes again.
constexpr std::string_view kFiller[] = {"the", "and", "of", "with", "under", "my", "your", "was", "is", "a"};
constexpr std::string_view kPunct[] = {".", ",", ";", "!", "?"};

std::string make_word(Rng& rng) {
  const std::size_t syllables = 2 + rng.uniform_index(2);
  std::string w;
  for (std::size_t s = 0; s < syllables; ++s) {
    w += kConsonants[rng.uniform_index(kConsonants.size())];
    w += kVowels[rng.uniform_index(kVowels.size())];
  }
  if (rng.uniform_index(2) == 0) w += kConsonants[rng.uniform_index(kConsonants.size())];
  return w;
}

std::size_t in_range(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.uniform_index(hi - lo + 1));
}

std::string render(std::vector<std::string> words, Rng& rng) {
  rng.shuffle(std::span<std::string>(words));
  std::string text;
  bool sentence_start = true;
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string w = words[i];
    if (rng.uniform_index(4) == 0) {
      text += kFiller[rng.uniform_index(std::size(kFiller))];
      text += ' ';
    }
    if (sentence_start) w[0] = static_cast<char>(w[0] - 'a' + 'A');
    text += w;
    sentence_start = false;
    if (rng.uniform_index(7) == 0) {
      const auto p = kPunct[rng.uniform_index(std::size(kPunct))];
      text += p;
      sentence_start = p != ",";
    }
    if (rng.uniform_index(30) == 0) text += " " + std::to_string(rng.uniform_index(2000));
    text += (i + 1) % 8 == 0 ? '\n' : ' ';
  }
  text += ".\n";
  return text;
}

}  // namespace

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec) {
  if (spec.n_classes < 2 || spec.n_classes > 26) throw InvalidArgument("synthetic: n_classes must be in [2, 26]");
  if (spec.docs_per_class == 0 || spec.planted_per_class == 0) {
    throw InvalidArgument("synthetic: empty class");
  }
  if (spec.planted_tokens_min > spec.planted_tokens_max || spec.noise_tokens_min > spec.noise_tokens_max ||
      spec.planted_tokens_max == 0) {
    throw InvalidArgument("synthetic: bad token ranges");
  }
  if (spec.noise_words == 0 && spec.noise_tokens_max > 0) throw InvalidArgument("synthetic: no noise words");

  Rng rng(derive_seed(spec.seed, 0));
  const auto stops = StopwordList::builtin();
  std::set<std::string> used;
  auto fresh = [&] {
    for (;;) {
      std::string w = make_word(rng);
      if (w.size() < 4 || stops.contains(w) || porter_stem(w) != w) continue;
      if (used.insert(w).second) return w;
    }
  };

  SyntheticCorpus out;
  for (std::size_t c = 0; c < spec.n_classes; ++c) {
    out.categories.push_back(std::string("poet_") + static_cast<char>('a' + c));
    out.planted.emplace_back();
    for (std::size_t i = 0; i < spec.planted_per_class; ++i) out.planted.back().push_back(fresh());
  }
  for (std::size_t i = 0; i < spec.noise_words; ++i) out.noise.push_back(fresh());

  std::vector<Document> docs;
  Rng text_rng(derive_seed(spec.seed, 1));
  for (std::size_t c = 0; c < spec.n_classes; ++c) {
    for (std::size_t d = 0; d < spec.docs_per_class; ++d) {
      std::vector<std::string> words;
      const auto n_planted = in_range(text_rng, spec.planted_tokens_min, spec.planted_tokens_max);
      const auto n_noise = in_range(text_rng, spec.noise_tokens_min, spec.noise_tokens_max);
      for (std::size_t i = 0; i < n_planted; ++i) {
        words.push_back(out.planted[c][text_rng.uniform_index(spec.planted_per_class)]);
      }
      for (std::size_t i = 0; i < n_noise; ++i) words.push_back(out.noise[text_rng.uniform_index(spec.noise_words)]);
      char name[32];
      std::snprintf(name, sizeof name, "doc%04zu.txt", d);
      docs.push_back({out.categories[c] + "/" + name, render(std::move(words), text_rng), out.categories[c],
                      Split::Unassigned});
    }
  }
  out.corpus = Corpus(std::move(docs));
  return out;
}

void write_corpus(const Corpus& corpus, const fs::path& root) {
  const bool split = corpus.is_split();
  for (const auto& doc : corpus.documents()) {
    if (split && doc.split == Split::Unassigned) throw DataError("write_corpus: partially split corpus");
    fs::path file = root;
    if (split) file /= doc.split == Split::Train ? "train" : "test";
    file /= doc.label;
    file /= fs::path(doc.id).filename();
    fs::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot write " + file.string());
    out << doc.text;
  }
}

}  // namespace textclf
