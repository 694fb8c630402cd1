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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "textclf/preprocess.hpp"

namespace textclf {

using ColumnId = std::uint32_t;

// Training-set bag of words: lexicographically ordered terms with their
// document frequencies.
class Vocabulary {
 public:
  Vocabulary() = default;
  // terms must be strictly increasing; doc_freq is parallel to terms.
  Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq);

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<std::size_t>& doc_freq() const { return doc_freq_; }
  const std::string& term(ColumnId id) const { return terms_[id]; }
  std::size_t doc_freq(ColumnId id) const { return doc_freq_[id]; }
  std::optional<ColumnId> find(std::string_view term) const;

  // FNV-1a over terms and document frequencies, as 16 hex digits.
  std::string hash(std::size_t n_train) const;

 private:
  std::vector<std::string> terms_;
  std::vector<std::size_t> doc_freq_;
  std::unordered_map<std::string, ColumnId> index_;
};

template <typename T>
struct SparseEntry {
  ColumnId column;
  T value;
  bool operator==(const SparseEntry&) const = default;
};

// Sorted by column, no zero values stored.
using SparseVector = std::vector<SparseEntry<double>>;
// Raw in-vocabulary term counts, sorted by column.
using TermCounts = std::vector<SparseEntry<std::uint32_t>>;

// A document as seen by the classifiers: TF-IDF weights for the geometric
// learners and raw counts for naive Bayes and presence tests.
struct DocVector {
  std::size_t dimension = 0;
  TermCounts counts;
  SparseVector weights;
};

struct LabeledStream {
  TokenStream tokens;
  std::size_t label;
};

struct MatrixRow {
  std::string doc_id;
  std::size_t label;  // index into TermDocMatrix::categories
  DocVector vector;
};

struct TermDocMatrix {
  std::vector<MatrixRow> rows;
  Vocabulary vocab;
  std::size_t n_train = 0;
  std::vector<std::string> categories;

  std::size_t dimension() const { return vocab.size(); }
};

Vocabulary build_vocabulary(std::span<const LabeledStream> train_streams);
Vocabulary build_vocabulary(std::span<const TokenStream> train_streams);

// Natural-log inverse document frequency, ln(n_docs / doc_freq).
double idf(std::size_t n_docs, std::size_t doc_freq);

TermCounts count_terms(const TokenStream& stream, const Vocabulary& vocab);
SparseVector vectorize(const TokenStream& stream, const Vocabulary& vocab, std::size_t n_train);
DocVector encode(const TokenStream& stream, const Vocabulary& vocab, std::size_t n_train);

TermDocMatrix build_matrix(std::span<const LabeledStream> train_streams,
                           std::span<const std::string> doc_ids,
                           std::vector<std::string> categories);

double dot(const SparseVector& a, const SparseVector& b);
double norm(const SparseVector& v);

// Header `doc_id,label,weights`; weights are `term:value` pairs joined by `;`.
void write_matrix_csv(const TermDocMatrix& matrix, const std::filesystem::path& path);
// `term<TAB>doc_freq` per line.
void write_vocabulary(const Vocabulary& vocab, const std::filesystem::path& path);

}  // namespace textclf
