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
#include <string>
#include <vector>

#include "textclf/corpus.hpp"

namespace textclf {

// Planted-vocabulary corpus: every class owns a set of exclusive words and all
// classes share a pool of noise words. Planted and noise words are Porter
// fixed points and not stopwords, so they survive preprocessing unchanged.
struct SyntheticSpec {
  std::size_t n_classes = 3;
  std::size_t docs_per_class = 100;
  std::size_t planted_per_class = 20;
  std::size_t noise_words = 500;
  std::size_t planted_tokens_min = 6;
  std::size_t planted_tokens_max = 10;
  std::size_t noise_tokens_min = 30;
  std::size_t noise_tokens_max = 50;
  std::uint64_t seed = 42;
};

struct SyntheticCorpus {
  std::vector<std::string> categories;
  std::vector<std::vector<std::string>> planted;  // per category
  std::vector<std::string> noise;
  Corpus corpus;  // unsplit, layout A ids
};

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec);

// Writes `<category>/<name>.txt` for unsplit corpora, or the train/test
// layout when every document carries a split.
void write_corpus(const Corpus& corpus, const std::filesystem::path& root);

}  // namespace textclf
