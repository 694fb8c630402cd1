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
#include <string_view>
#include <vector>

namespace textclf {

enum class Split { Unassigned, Train, Test };

std::string_view to_string(Split split);

struct Document {
  std::string id;  // path relative to the corpus root, '/'-separated
  std::string text;
  std::string label;
  Split split = Split::Unassigned;
};

struct CategoryCounts {
  std::string category;
  std::size_t train = 0;
  std::size_t test = 0;
  std::size_t unassigned = 0;
};

// Labeled documents plus their (sorted) category set.
class Corpus {
 public:
  Corpus() = default;

  // Validates ids, non-empty text, and derives the category set from the labels.
  explicit Corpus(std::vector<Document> documents);

  const std::vector<Document>& documents() const { return documents_; }
  const std::vector<std::string>& categories() const { return categories_; }
  std::size_t size() const { return documents_.size(); }

  bool is_split() const;
  std::vector<CategoryCounts> counts() const;

  // Documents of one split, in corpus order.
  std::vector<const Document*> select(Split split) const;

 private:
  std::vector<Document> documents_;
  std::vector<std::string> categories_;
};

// Loads layout A (`<category>/<file>.txt`) or layout B
// (`train/<category>/*.txt` and `test/<category>/*.txt`). Layout B is chosen
// when the root's only subdirectories are `train` and `test`.
Corpus load_corpus(const std::filesystem::path& root);

// Marks round(train_fraction * n_c) documents of each category as Train
// (round half up) after a seeded shuffle of that category; the rest are Test.
Corpus stratified_split(const Corpus& corpus, double train_fraction, std::uint64_t seed);

// Number of training documents for a category of size n.
std::size_t train_count(std::size_t n, double train_fraction);

bool is_valid_utf8(std::string_view bytes);

}  // namespace textclf
