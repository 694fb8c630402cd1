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

#include "textclf/preprocess.hpp"

#include <algorithm>
#include <array>
#include <fstream>

#include "textclf/error.hpp"

namespace textclf {
namespace detail {
extern const std::array<std::string_view, 523> kSmartStopwords;
}  // namespace detail

namespace {

bool is_ascii_letter(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

char to_lower_ascii(unsigned char c) {
  return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\f\v");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

StopwordList::StopwordList(const std::vector<std::string>& words, Source source) : source_(source) {
  for (const auto& w : words) {
    std::string lower;
    lower.reserve(w.size());
    for (unsigned char c : w) lower.push_back(to_lower_ascii(c));
    if (!lower.empty()) words_.insert(std::move(lower));
  }
}

StopwordList StopwordList::builtin() {
  std::vector<std::string> words(detail::kSmartStopwords.begin(), detail::kSmartStopwords.end());
  return StopwordList(words, Source::Builtin);
}

StopwordList StopwordList::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read stopword file: " + path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    std::string word = trim(line);
    if (word.empty() || word.front() == '#') continue;
    words.push_back(std::move(word));
  }
  return StopwordList(words, Source::File);
}

bool StopwordList::contains(std::string_view word) const { return words_.find(word) != words_.end(); }

TokenStream normalize_and_tokenize(std::string_view text) {
  TokenStream tokens;
  std::string current;
  for (unsigned char c : text) {
    if (is_ascii_letter(c)) {
      current.push_back(to_lower_ascii(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

TokenStream remove_stopwords(const TokenStream& stream, const StopwordList& stops) {
  TokenStream out;
  out.reserve(stream.size());
  std::copy_if(stream.begin(), stream.end(), std::back_inserter(out),
               [&](const std::string& t) { return !stops.contains(t); });
  return out;
}

TokenStream preprocess_text(std::string_view text, const StopwordList& stops) {
  TokenStream tokens = remove_stopwords(normalize_and_tokenize(text), stops);
  for (auto& t : tokens) t = porter_stem(t);
  return tokens;
}

TokenStream preprocess_document(const Document& doc, const StopwordList& stops) {
  return preprocess_text(doc.text, stops);
}

}  // namespace textclf
