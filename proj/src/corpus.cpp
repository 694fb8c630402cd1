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

#include "textclf/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "textclf/error.hpp"
#include "textclf/random.hpp"

namespace fs = std::filesystem;

namespace textclf {

std::string_view to_string(Split split) {
  switch (split) {
    case Split::Train:
      return "train";
    case Split::Test:
      return "test";
    case Split::Unassigned:
      break;
  }
  return "unassigned";
}

namespace {

bool is_blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
  });
}

std::string read_file(const fs::path& path, const std::string& id) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read file: " + id);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (is_blank(text)) throw DataError("empty document: " + id);
  if (!is_valid_utf8(text)) throw DataError("file is not valid UTF-8: " + id);
  return text;
}

std::vector<fs::path> sorted_entries(const fs::path& dir, bool directories) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (directories ? entry.is_directory() : entry.is_regular_file()) {
      if (!directories && entry.path().extension() != ".txt") continue;
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().generic_string() < b.filename().generic_string();
  });
  return out;
}

// Reads every `<category>/*.txt` under dir; ids are relative to root.
void load_categories(const fs::path& root, const fs::path& dir, Split split,
                     std::vector<Document>& out) {
  for (const auto& category_dir : sorted_entries(dir, true)) {
    const std::string category = category_dir.filename().string();
    const auto files = sorted_entries(category_dir, false);
    if (files.empty()) {
      throw DataError("category has no documents: " +
                      fs::relative(category_dir, root).generic_string());
    }
    for (const auto& file : files) {
      Document doc;
      doc.id = fs::relative(file, root).generic_string();
      doc.text = read_file(file, doc.id);
      doc.label = category;
      doc.split = split;
      out.push_back(std::move(doc));
    }
  }
}

}  // namespace

bool is_valid_utf8(std::string_view bytes) {
  std::size_t i = 0;
  while (i < bytes.size()) {
    const auto c = static_cast<unsigned char>(bytes[i]);
    std::size_t extra = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= bytes.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto cc = static_cast<unsigned char>(bytes[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Reject overlong forms, surrogates and out-of-range code points.
    if ((extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) || (extra == 3 && cp < 0x10000)) {
      return false;
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
    i += extra + 1;
  }
  return true;
}

Corpus::Corpus(std::vector<Document> documents) : documents_(std::move(documents)) {
  std::set<std::string> ids;
  std::set<std::string> labels;
  for (const auto& doc : documents_) {
    if (!ids.insert(doc.id).second) throw DataError("duplicate document id: " + doc.id);
    if (is_blank(doc.text)) throw DataError("empty document: " + doc.id);
    if (doc.label.empty()) throw DataError("document has no label: " + doc.id);
    labels.insert(doc.label);
  }
  categories_.assign(labels.begin(), labels.end());
}

bool Corpus::is_split() const {
  return std::any_of(documents_.begin(), documents_.end(),
                     [](const Document& d) { return d.split != Split::Unassigned; });
}

std::vector<CategoryCounts> Corpus::counts() const {
  std::vector<CategoryCounts> out;
  for (const auto& c : categories_) out.push_back({c, 0, 0, 0});
  for (const auto& doc : documents_) {
    auto it = std::lower_bound(categories_.begin(), categories_.end(), doc.label);
    auto& row = out[static_cast<std::size_t>(it - categories_.begin())];
    switch (doc.split) {
      case Split::Train:
        ++row.train;
        break;
      case Split::Test:
        ++row.test;
        break;
      case Split::Unassigned:
        ++row.unassigned;
        break;
    }
  }
  return out;
}

std::vector<const Document*> Corpus::select(Split split) const {
  std::vector<const Document*> out;
  for (const auto& doc : documents_) {
    if (doc.split == split) out.push_back(&doc);
  }
  return out;
}

Corpus load_corpus(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw IoError("corpus root does not exist or is not a directory: " + root.string());
  }
  const auto subdirs = sorted_entries(root, true);
  const bool layout_b = subdirs.size() == 2 && subdirs[0].filename() == "test" &&
                        subdirs[1].filename() == "train";

  std::vector<Document> docs;
  if (layout_b) {
    load_categories(root, root / "train", Split::Train, docs);
    load_categories(root, root / "test", Split::Test, docs);
  } else {
    load_categories(root, root, Split::Unassigned, docs);
  }
  if (docs.empty()) throw DataError("corpus has no documents: " + root.string());

  std::sort(docs.begin(), docs.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  Corpus corpus(std::move(docs));
  if (layout_b) {
    for (const auto& row : corpus.counts()) {
      if (row.train == 0 || row.test == 0) {
        throw DataError("category '" + row.category + "' must have documents in both train/ and test/");
      }
    }
  }
  return corpus;
}

std::size_t train_count(std::size_t n, double train_fraction) {
  return static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n) + 0.5));
}

Corpus stratified_split(const Corpus& corpus, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InvalidArgument("train fraction must lie in (0, 1)");
  }
  if (corpus.is_split()) throw DataError("corpus is already split");

  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    members[corpus.documents()[i].label].push_back(i);
  }

  std::vector<Document> docs = corpus.documents();
  for (auto& [category, indices] : members) {
    const std::size_t n = indices.size();
    if (n < 2) throw DataError("category '" + category + "' needs at least 2 documents to split");
    const std::size_t n_train = train_count(n, train_fraction);
    if (n_train == 0 || n_train == n) {
      throw DataError("train fraction leaves category '" + category + "' with an empty split");
    }
    // Each category gets its own stream so adding a category does not perturb the others.
    std::uint64_t salt = 0;
    for (unsigned char c : category) salt = salt * 131 + c;
    Rng rng(derive_seed(seed, salt));
    rng.shuffle(std::span<std::size_t>(indices));
    for (std::size_t r = 0; r < n; ++r) {
      docs[indices[r]].split = r < n_train ? Split::Train : Split::Test;
    }
  }
  return Corpus(std::move(docs));
}

}  // namespace textclf
