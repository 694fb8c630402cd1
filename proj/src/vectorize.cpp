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

#include "textclf/vectorize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "textclf/error.hpp"

namespace textclf {

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq)
    : terms_(std::move(terms)), doc_freq_(std::move(doc_freq)) {
  if (terms_.size() != doc_freq_.size()) {
    throw InvalidArgument("vocabulary terms and document frequencies differ in length");
  }
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0 && !(terms_[i - 1] < terms_[i])) {
      throw InvalidArgument("vocabulary terms must be strictly increasing");
    }
    if (doc_freq_[i] == 0) throw InvalidArgument("vocabulary term with zero document frequency");
    index_.emplace(terms_[i], static_cast<ColumnId>(i));
  }
}

std::optional<ColumnId> Vocabulary::find(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string Vocabulary::hash(std::size_t n_train) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::string_view bytes) {
    for (unsigned char c : bytes) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  mix(std::to_string(n_train));
  mix("\n");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    mix(terms_[i]);
    mix("\t");
    mix(std::to_string(doc_freq_[i]));
    mix("\n");
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

Vocabulary build_vocabulary(std::span<const TokenStream> train_streams) {
  if (train_streams.empty()) throw InvalidArgument("cannot build a vocabulary from zero documents");
  std::map<std::string, std::size_t> df;
  for (const auto& stream : train_streams) {
    std::set<std::string_view> seen(stream.begin(), stream.end());
    for (auto term : seen) ++df[std::string(term)];
  }
  if (df.empty()) throw DataError("training documents contain no terms; vocabulary is empty");
  std::vector<std::string> terms;
  std::vector<std::size_t> freq;
  terms.reserve(df.size());
  freq.reserve(df.size());
  for (auto& [term, count] : df) {
    terms.push_back(term);
    freq.push_back(count);
  }
  return Vocabulary(std::move(terms), std::move(freq));
}

Vocabulary build_vocabulary(std::span<const LabeledStream> train_streams) {
  std::vector<TokenStream> streams;
  streams.reserve(train_streams.size());
  for (const auto& s : train_streams) streams.push_back(s.tokens);
  return build_vocabulary(std::span<const TokenStream>(streams));
}

double idf(std::size_t n_docs, std::size_t doc_freq) {
  if (doc_freq == 0) throw InvalidArgument("idf: document frequency must be positive");
  if (doc_freq > n_docs) throw InvalidArgument("idf: document frequency exceeds document count");
  return std::log(static_cast<double>(n_docs) / static_cast<double>(doc_freq));
}

TermCounts count_terms(const TokenStream& stream, const Vocabulary& vocab) {
  std::map<ColumnId, std::uint32_t> tf;
  for (const auto& token : stream) {
    if (auto id = vocab.find(token)) ++tf[*id];
  }
  TermCounts out;
  out.reserve(tf.size());
  for (auto [column, count] : tf) out.push_back({column, count});
  return out;
}

namespace {

SparseVector weigh(const TermCounts& counts, const Vocabulary& vocab, std::size_t n_train) {
  SparseVector out;
  out.reserve(counts.size());
  for (auto [column, count] : counts) {
    const double w = static_cast<double>(count) * idf(n_train, vocab.doc_freq(column));
    if (w != 0.0) out.push_back({column, w});
  }
  return out;
}

}  // namespace

SparseVector vectorize(const TokenStream& stream, const Vocabulary& vocab, std::size_t n_train) {
  if (vocab.empty()) throw InvalidArgument("vectorize: empty vocabulary");
  return weigh(count_terms(stream, vocab), vocab, n_train);
}

DocVector encode(const TokenStream& stream, const Vocabulary& vocab, std::size_t n_train) {
  if (vocab.empty()) throw InvalidArgument("encode: empty vocabulary");
  DocVector v;
  v.dimension = vocab.size();
  v.counts = count_terms(stream, vocab);
  v.weights = weigh(v.counts, vocab, n_train);
  return v;
}

TermDocMatrix build_matrix(std::span<const LabeledStream> train_streams,
                           std::span<const std::string> doc_ids,
                           std::vector<std::string> categories) {
  if (doc_ids.size() != train_streams.size()) {
    throw InvalidArgument("build_matrix: one id per training stream required");
  }
  TermDocMatrix m;
  m.vocab = build_vocabulary(train_streams);
  m.n_train = train_streams.size();
  m.categories = std::move(categories);
  m.rows.reserve(train_streams.size());
  for (std::size_t i = 0; i < train_streams.size(); ++i) {
    if (train_streams[i].label >= m.categories.size()) {
      throw InvalidArgument("build_matrix: label out of range");
    }
    m.rows.push_back({doc_ids[i], train_streams[i].label,
                      encode(train_streams[i].tokens, m.vocab, m.n_train)});
  }
  return m;
}

double dot(const SparseVector& a, const SparseVector& b) {
  double sum = 0.0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->column < j->column) {
      ++i;
    } else if (j->column < i->column) {
      ++j;
    } else {
      sum += i->value * j->value;
      ++i;
      ++j;
    }
  }
  return sum;
}

double norm(const SparseVector& v) {
  double sum = 0.0;
  for (const auto& e : v) sum += e.value * e.value;
  return std::sqrt(sum);
}

void write_matrix_csv(const TermDocMatrix& matrix, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "doc_id,label,weights\n";
  out << std::setprecision(17);
  for (const auto& row : matrix.rows) {
    out << row.doc_id << ',' << matrix.categories[row.label] << ',';
    bool first = true;
    for (const auto& e : row.vector.weights) {
      if (!first) out << ';';
      first = false;
      out << matrix.vocab.term(e.column) << ':' << e.value;
    }
    out << '\n';
  }
}

void write_vocabulary(const Vocabulary& vocab, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    out << vocab.terms()[i] << '\t' << vocab.doc_freq()[i] << '\n';
  }
}

}  // namespace textclf
