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
#include <ostream>
#include <string>
#include <vector>

#include "textclf/vectorize.hpp"

namespace textclf {

// Document counts for one (term, class) pair, one-vs-rest:
// a = class docs with the term, b = class docs without it,
// c = other docs with the term, d = other docs without it.
struct ContingencyTable {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t c = 0;
  std::size_t d = 0;
  std::size_t n = 0;

  bool operator==(const ContingencyTable&) const = default;
};

struct ScoredTerm {
  std::string term;
  double score;
};

// Descending by score, ties by term.
struct ChiRanking {
  std::vector<ScoredTerm> scored;
};

ContingencyTable contingency(ColumnId term, std::size_t category, const TermDocMatrix& matrix);

// N (ad - bc)^2 / ((a+c)(b+d)(a+b)(c+d)); zero when a marginal vanishes.
double chi_score(const ContingencyTable& t);

// Max over classes of the one-vs-rest score, for every vocabulary term.
ChiRanking rank_terms(const TermDocMatrix& matrix);

// Keeps the k best-ranked terms (re-indexed in lexicographic order). IDF
// weights are carried over unchanged.
TermDocMatrix select_top_k(const TermDocMatrix& matrix, const ChiRanking& ranking, std::size_t k);

// Re-indexes a vector from one vocabulary onto a subset vocabulary; columns
// missing from `to` are dropped.
DocVector project(const DocVector& v, const Vocabulary& from, const Vocabulary& to);

// `rank,term,score` with 6-decimal scores.
void write_ranking_csv(const ChiRanking& ranking, std::ostream& out);

}  // namespace textclf
