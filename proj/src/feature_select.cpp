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

#include "textclf/feature_select.hpp"

#include <algorithm>
#include <iomanip>

#include "textclf/error.hpp"

namespace textclf {
namespace {

using u128 = unsigned __int128;

bool contains_term(const DocVector& v, ColumnId term) {
  auto it = std::lower_bound(v.counts.begin(), v.counts.end(), term,
                             [](const auto& e, ColumnId c) { return e.column < c; });
  return it != v.counts.end() && it->column == term && it->value > 0;
}

}  // namespace

ContingencyTable contingency(ColumnId term, std::size_t category, const TermDocMatrix& matrix) {
  if (term >= matrix.vocab.size()) throw InvalidArgument("contingency: unknown term");
  if (category >= matrix.categories.size()) throw InvalidArgument("contingency: unknown class");
  ContingencyTable t;
  for (const auto& row : matrix.rows) {
    const bool present = contains_term(row.vector, term);
    if (row.label == category) {
      ++(present ? t.a : t.b);
    } else {
      ++(present ? t.c : t.d);
    }
  }
  t.n = matrix.rows.size();
  return t;
}

double chi_score(const ContingencyTable& t) {
  // Numerator and denominator are formed exactly in integers so equal ratios
  // always yield bit-identical scores.
  const u128 ac = t.a + t.c;
  const u128 bd = t.b + t.d;
  const u128 ab = t.a + t.b;
  const u128 cd = t.c + t.d;
  if (ac == 0 || bd == 0 || ab == 0 || cd == 0) return 0.0;
  const u128 ad = static_cast<u128>(t.a) * t.d;
  const u128 bc = static_cast<u128>(t.b) * t.c;
  const u128 diff = ad > bc ? ad - bc : bc - ad;
  const u128 numerator = static_cast<u128>(t.n) * diff * diff;
  const u128 denominator = ac * bd * ab * cd;
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

ChiRanking rank_terms(const TermDocMatrix& matrix) {
  const std::size_t n_classes = matrix.categories.size();
  if (n_classes < 2) throw InvalidArgument("rank_terms: need at least two classes");

  const std::size_t n_terms = matrix.vocab.size();
  std::vector<std::size_t> class_size(n_classes, 0);
  // present[t * n_classes + c] = training docs of class c containing term t
  std::vector<std::size_t> present(n_terms * n_classes, 0);
  for (const auto& row : matrix.rows) {
    ++class_size[row.label];
    for (const auto& e : row.vector.counts) {
      if (e.value > 0) ++present[e.column * n_classes + row.label];
    }
  }
  const std::size_t n = matrix.rows.size();

  ChiRanking ranking;
  ranking.scored.reserve(n_terms);
  for (std::size_t t = 0; t < n_terms; ++t) {
    std::size_t df_total = 0;
    for (std::size_t c = 0; c < n_classes; ++c) df_total += present[t * n_classes + c];
    double best = 0.0;
    for (std::size_t c = 0; c < n_classes; ++c) {
      ContingencyTable table;
      table.a = present[t * n_classes + c];
      table.c = df_total - table.a;
      table.b = class_size[c] - table.a;
      table.d = (n - class_size[c]) - table.c;
      table.n = n;
      best = std::max(best, chi_score(table));
    }
    ranking.scored.push_back({matrix.vocab.terms()[t], best});
  }
  std::stable_sort(ranking.scored.begin(), ranking.scored.end(),
                   [](const ScoredTerm& x, const ScoredTerm& y) {
                     if (x.score != y.score) return x.score > y.score;
                     return x.term < y.term;
                   });
  return ranking;
}

DocVector project(const DocVector& v, const Vocabulary& from, const Vocabulary& to) {
  DocVector out;
  out.dimension = to.size();
  for (const auto& e : v.counts) {
    if (auto id = to.find(from.term(e.column))) out.counts.push_back({*id, e.value});
  }
  for (const auto& e : v.weights) {
    if (auto id = to.find(from.term(e.column))) out.weights.push_back({*id, e.value});
  }
  // Both vocabularies are sorted, so the relative column order is preserved.
  return out;
}

TermDocMatrix select_top_k(const TermDocMatrix& matrix, const ChiRanking& ranking, std::size_t k) {
  if (k < 1 || k > matrix.vocab.size()) {
    throw InvalidArgument("select_top_k: k must lie in [1, " + std::to_string(matrix.vocab.size()) + "]");
  }
  if (ranking.scored.size() != matrix.vocab.size()) {
    throw InvalidArgument("select_top_k: ranking does not cover the vocabulary");
  }
  std::vector<std::string> terms;
  terms.reserve(k);
  for (std::size_t i = 0; i < k; ++i) terms.push_back(ranking.scored[i].term);
  std::sort(terms.begin(), terms.end());
  std::vector<std::size_t> df;
  df.reserve(k);
  for (const auto& t : terms) {
    auto id = matrix.vocab.find(t);
    if (!id) throw InvalidArgument("select_top_k: ranked term '" + t + "' not in vocabulary");
    df.push_back(matrix.vocab.doc_freq(*id));
  }

  TermDocMatrix out;
  out.vocab = Vocabulary(std::move(terms), std::move(df));
  out.n_train = matrix.n_train;
  out.categories = matrix.categories;
  out.rows.reserve(matrix.rows.size());
  for (const auto& row : matrix.rows) {
    out.rows.push_back({row.doc_id, row.label, project(row.vector, matrix.vocab, out.vocab)});
  }
  return out;
}

void write_ranking_csv(const ChiRanking& ranking, std::ostream& out) {
  out << "rank,term,score\n";
  out << std::fixed << std::setprecision(6);
  for (std::size_t i = 0; i < ranking.scored.size(); ++i) {
    out << (i + 1) << ',' << ranking.scored[i].term << ',' << ranking.scored[i].score << '\n';
  }
}

}  // namespace textclf
