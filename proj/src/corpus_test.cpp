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

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "textclf/error.hpp"

namespace textclf {
namespace {

using testing::TempDir;
using testing::write_file;

TEST(LoadCorpus, LayoutA) {
  TempDir dir;
  write_file(dir / "a/p1.txt", "first poem");
  write_file(dir / "a/p2.txt", "second poem");
  write_file(dir / "b/p1.txt", "third poem");
  const Corpus c = load_corpus(dir.path());
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.categories(), (std::vector<std::string>{"a", "b"}));
  for (const auto& d : c.documents()) EXPECT_EQ(d.split, Split::Unassigned);
  EXPECT_EQ(c.documents()[0].id, "a/p1.txt");
  EXPECT_EQ(c.documents()[2].id, "b/p1.txt");
  EXPECT_EQ(c.documents()[2].label, "b");
  EXPECT_FALSE(c.is_split());
}

TEST(LoadCorpus, LayoutB) {
  TempDir dir;
  write_file(dir / "train/a/x.txt", "x text");
  write_file(dir / "test/a/y.txt", "y text");
  const Corpus c = load_corpus(dir.path());
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.documents()[0].id, "test/a/y.txt");
  EXPECT_EQ(c.documents()[0].split, Split::Test);
  EXPECT_EQ(c.documents()[1].split, Split::Train);
  EXPECT_TRUE(c.is_split());
}

TEST(LoadCorpus, LargeLayoutBWithSpacesInNames) {
  TempDir dir;
  const std::vector<std::tuple<std::string, int, int>> rows = {
      {"Adryan Rotica", 284, 189}, {"Lamar Cole", 241, 162}, {"Richard Allen Beevor", 227, 152}};
  for (const auto& [name, train, test] : rows) {
    for (int i = 0; i < train; ++i) write_file(dir / ("train/" + name + "/" + std::to_string(i) + ".txt"), "w");
    for (int i = 0; i < test; ++i) write_file(dir / ("test/" + name + "/" + std::to_string(i) + ".txt"), "w");
  }
  const Corpus c = load_corpus(dir.path());
  EXPECT_EQ(c.size(), 1255u);
  const auto counts = c.counts();
  ASSERT_EQ(counts.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(counts[i].category, std::get<0>(rows[i]));
    EXPECT_EQ(counts[i].train, static_cast<std::size_t>(std::get<1>(rows[i])));
    EXPECT_EQ(counts[i].test, static_cast<std::size_t>(std::get<2>(rows[i])));
  }
}

TEST(LoadCorpus, IgnoresNonTextFilesAndSortsEntries) {
  TempDir dir;
  write_file(dir / "b/z.txt", "z");
  write_file(dir / "b/a.txt", "a");
  write_file(dir / "b/notes.md", "not a document");
  write_file(dir / "a/m.txt", "m");
  const Corpus c = load_corpus(dir.path());
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.documents()[0].id, "a/m.txt");
  EXPECT_EQ(c.documents()[1].id, "b/a.txt");
  EXPECT_EQ(c.documents()[2].id, "b/z.txt");
}

TEST(LoadCorpus, Errors) {
  TempDir dir;
  EXPECT_THROW(load_corpus(dir / "missing"), IoError);

  write_file(dir / "blank/a/x.txt", "  \n\t ");
  try {
    load_corpus(dir / "blank");
    FAIL() << "blank document accepted";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("x.txt"), std::string::npos);
  }

  write_file(dir / "bad/a/x.txt", std::string("caf\xC3", 4));
  EXPECT_THROW(load_corpus(dir / "bad"), DataError);

  std::filesystem::create_directories(dir / "emptycat/a");
  write_file(dir / "emptycat/b/x.txt", "fine");
  EXPECT_THROW(load_corpus(dir / "emptycat"), DataError);

  // Layout B needs every category on both sides.
  write_file(dir / "oneside/train/a/x.txt", "x");
  write_file(dir / "oneside/train/b/x.txt", "x");
  write_file(dir / "oneside/test/a/y.txt", "y");
  EXPECT_THROW(load_corpus(dir / "oneside"), DataError);
}

TEST(CorpusType, RejectsDuplicateIdsAndBlankText) {
  EXPECT_THROW(Corpus({{"a/x", "t", "a", Split::Unassigned}, {"a/x", "u", "a", Split::Unassigned}}), DataError);
  EXPECT_THROW(Corpus({{"a/x", "   ", "a", Split::Unassigned}}), DataError);
  EXPECT_THROW(Corpus({{"a/x", "t", "", Split::Unassigned}}), DataError);
}

Corpus sized_corpus(const std::vector<std::pair<std::string, int>>& sizes) {
  std::vector<Document> docs;
  for (const auto& [label, n] : sizes) {
    for (int i = 0; i < n; ++i) docs.push_back({label + "/" + std::to_string(i), "text", label, Split::Unassigned});
  }
  return Corpus(std::move(docs));
}

TEST(StratifiedSplit, Counts) {
  const Corpus c = stratified_split(sized_corpus({{"a", 10}, {"b", 473}}), 0.6, 42);
  const auto counts = c.counts();
  EXPECT_EQ(counts[0].train, 6u);
  EXPECT_EQ(counts[0].test, 4u);
  EXPECT_EQ(counts[1].train, 284u);
  EXPECT_EQ(counts[1].test, 189u);
  for (const auto& d : c.documents()) EXPECT_NE(d.split, Split::Unassigned);
}

TEST(StratifiedSplit, TrainCountRoundsHalfUp) {
  EXPECT_EQ(train_count(473, 0.6), 284u);
  EXPECT_EQ(train_count(403, 0.6), 242u);
  EXPECT_EQ(train_count(5, 0.5), 3u);
  EXPECT_EQ(train_count(10, 0.6), 6u);
}

TEST(StratifiedSplit, DeterministicPerSeed) {
  const Corpus base = sized_corpus({{"a", 40}, {"b", 30}});
  const Corpus s1 = stratified_split(base, 0.6, 7);
  const Corpus s2 = stratified_split(base, 0.6, 7);
  const Corpus s3 = stratified_split(base, 0.6, 8);
  bool differs = false;
  for (std::size_t i = 0; i < base.size(); ++i) {
    EXPECT_EQ(s1.documents()[i].split, s2.documents()[i].split);
    differs = differs || s1.documents()[i].split != s3.documents()[i].split;
  }
  EXPECT_TRUE(differs);
}

TEST(StratifiedSplit, PartitionAndExactCountsForManySizes) {
  for (int n = 2; n <= 40; ++n) {
    for (double f : {0.3, 0.5, 0.6, 0.75}) {
      const std::size_t expected = train_count(static_cast<std::size_t>(n), f);
      if (expected == 0 || expected == static_cast<std::size_t>(n)) continue;
      const Corpus c = stratified_split(sized_corpus({{"a", n}, {"b", 3}}), f, 99);
      EXPECT_EQ(c.counts()[0].train, expected);
      EXPECT_EQ(c.counts()[0].train + c.counts()[0].test, static_cast<std::size_t>(n));
    }
  }
}

TEST(StratifiedSplit, Errors) {
  const Corpus base = sized_corpus({{"a", 10}});
  EXPECT_THROW(stratified_split(base, 0.0, 1), InvalidArgument);
  EXPECT_THROW(stratified_split(base, 1.0, 1), InvalidArgument);
  EXPECT_THROW(stratified_split(stratified_split(base, 0.5, 1), 0.5, 1), DataError);
  EXPECT_THROW(stratified_split(sized_corpus({{"a", 1}}), 0.5, 1), DataError);
  EXPECT_THROW(stratified_split(sized_corpus({{"a", 3}}), 0.9, 1), DataError);
}

TEST(Utf8, Validation) {
  EXPECT_TRUE(is_valid_utf8("plain"));
  EXPECT_TRUE(is_valid_utf8("caf\xC3\xA9"));
  EXPECT_TRUE(is_valid_utf8("\xE2\x80\x94"));
  EXPECT_FALSE(is_valid_utf8("\xC3"));
  EXPECT_FALSE(is_valid_utf8("\xFF"));
  EXPECT_FALSE(is_valid_utf8("\xC0\xAF"));  // overlong
  EXPECT_FALSE(is_valid_utf8("\xED\xA0\x80"));  // surrogate
}

}  // namespace
}  // namespace textclf
