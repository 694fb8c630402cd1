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

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <unistd.h>
#include <utility>
#include <vector>

#include "textclf/preprocess.hpp"
#include "textclf/vectorize.hpp"

namespace textclf::testing {

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("textclf_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << text;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// (text, label) pairs tokenized without stopwords or stemming.
inline TermDocMatrix toy_matrix(const std::vector<std::pair<std::string, std::string>>& docs) {
  std::set<std::string> labels;
  for (const auto& d : docs) labels.insert(d.second);
  std::vector<std::string> categories(labels.begin(), labels.end());
  std::vector<LabeledStream> streams;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto label = static_cast<std::size_t>(
        std::find(categories.begin(), categories.end(), docs[i].second) - categories.begin());
    streams.push_back({normalize_and_tokenize(docs[i].first), label});
    ids.push_back("d" + std::to_string(i));
  }
  return build_matrix(streams, ids, categories);
}

// Matrix with explicit dense weights; counts mirror nonzero weights as 1.
inline TermDocMatrix dense_matrix(const std::vector<std::vector<double>>& x, const std::vector<std::size_t>& labels,
                                  std::size_t n_classes) {
  TermDocMatrix m;
  const std::size_t dim = x.empty() ? 0 : x[0].size();
  std::vector<std::string> terms;
  for (std::size_t f = 0; f < dim; ++f) {
    char name[32];
    std::snprintf(name, sizeof name, "f%03zu", f);
    terms.push_back(name);
  }
  m.vocab = Vocabulary(terms, std::vector<std::size_t>(dim, 1));
  m.n_train = x.size();
  for (std::size_t c = 0; c < n_classes; ++c) m.categories.push_back(std::string(1, static_cast<char>('a' + c)));
  for (std::size_t r = 0; r < x.size(); ++r) {
    MatrixRow row{"r" + std::to_string(r), labels[r], {}};
    row.vector.dimension = dim;
    for (std::size_t f = 0; f < dim; ++f) {
      if (x[r][f] != 0.0) {
        row.vector.weights.push_back({static_cast<ColumnId>(f), x[r][f]});
        row.vector.counts.push_back({static_cast<ColumnId>(f), 1u});
      }
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

}  // namespace textclf::testing
