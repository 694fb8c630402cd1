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

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "textclf/corpus.hpp"

namespace textclf {

// Ordered tokens, each matching [a-z]+.
using TokenStream = std::vector<std::string>;

class StopwordList {
 public:
  enum class Source { Builtin, File, Inline };

  StopwordList() = default;
  // Entries are lowercased and deduplicated.
  StopwordList(const std::vector<std::string>& words, Source source);

  // The 523 single-token entries of the SMART stopword list.
  static StopwordList builtin();
  // One word per line; blank lines and lines starting with '#' are skipped.
  static StopwordList from_file(const std::filesystem::path& path);
  static StopwordList none() { return {}; }

  bool contains(std::string_view word) const;
  const std::set<std::string, std::less<>>& words() const { return words_; }
  Source source() const { return source_; }
  std::size_t size() const { return words_.size(); }

 private:
  std::set<std::string, std::less<>> words_;
  Source source_ = Source::Inline;
};

// Lowercases ASCII letters, turns every other byte into a separator, and
// splits on the separators.
TokenStream normalize_and_tokenize(std::string_view text);

TokenStream remove_stopwords(const TokenStream& stream, const StopwordList& stops);

// Classic Porter stemmer. `word` must match [a-z]+.
std::string porter_stem(std::string_view word);

// normalize -> drop stopwords -> stem.
TokenStream preprocess_text(std::string_view text, const StopwordList& stops);
TokenStream preprocess_document(const Document& doc, const StopwordList& stops);

}  // namespace textclf
