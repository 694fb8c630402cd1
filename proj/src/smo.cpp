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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "textclf/classifiers.hpp"
#include "textclf/error.hpp"
#include "textclf/random.hpp"

// Linear-kernel SVM dual solved by sequential minimal optimization.
//
// Notation: g[t] = y[t] - w.x[t], so the prediction error is
// E[t] = f(x[t]) - y[t] = b - g[t]. At the optimum there is a b with
// max{g[t] : t in I_up} <= b <= min{g[t] : t in I_low}.
//
// Phase 1 is Platt's simplified SMO: sweep over KKT violators and pair each
// with a seeded random partner. Phase 2 polishes with maximal violating
// pairs until the optimality gap is negligible, then b is recomputed.

namespace textclf {
namespace {

constexpr std::size_t kCacheLimit = 8000;
constexpr double kPolishGap = 1e-9;
constexpr double kMinCurvature = 1e-12;

class KernelRows {
 public:
  explicit KernelRows(std::span<const SparseVector> x) : x_(x), diag_(x.size()) {
    for (std::size_t i = 0; i < x.size(); ++i) diag_[i] = dot(x[i], x[i]);
    if (x.size() <= kCacheLimit) cache_.resize(x.size());
  }

  double diag(std::size_t i) const { return diag_[i]; }

  // Uncached rows live in one of two scratch buffers, selected by `slot`.
  const std::vector<double>& row(std::size_t i, int slot) {
    if (!cache_.empty()) {
      auto& cached = cache_[i];
      if (!cached) cached = compute(i);
      return *cached;
    }
    scratch_[slot] = compute(i);
    return scratch_[slot];
  }

 private:
  std::vector<double> compute(std::size_t i) const {
    std::vector<double> r(x_.size());
    for (std::size_t t = 0; t < x_.size(); ++t) r[t] = t == i ? diag_[i] : dot(x_[i], x_[t]);
    return r;
  }

  std::span<const SparseVector> x_;
  std::vector<double> diag_;
  std::vector<std::optional<std::vector<double>>> cache_;
  std::array<std::vector<double>, 2> scratch_;
};

class SmoSolver {
 public:
  SmoSolver(std::span<const SparseVector> x, std::span<const int> y, const SvmSpec& spec)
      : x_(x), y_(y), c_(spec.c), tol_(spec.tolerance), max_passes_(spec.max_passes),
        rng_(spec.seed), kernel_(x), alpha_(x.size(), 0.0), g_(x.size()) {
    for (std::size_t t = 0; t < x.size(); ++t) g_[t] = y[t];
  }

  SmoResult solve(std::size_t dimension) {
    SmoResult result;
    result.sweeps = simplified_phase();
    const bool polished = polish_phase();
    snap_to_bounds();
    b_ = final_bias();

    result.w.assign(dimension, 0.0);
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (alpha_[i] == 0.0) continue;
      for (const auto& e : x_[i]) result.w[e.column] += alpha_[i] * y_[i] * e.value;
    }
    double balance = 0.0;
    for (std::size_t i = 0; i < x_.size(); ++i) balance += alpha_[i] * y_[i];
    const double violation = kkt_violation(x_, y_, alpha_, result.w, b_, c_);
    result.converged = polished && violation <= tol_ && std::abs(balance) <= 1e-9;
    result.alpha = alpha_;
    result.b = b_;
    return result;
  }

 private:
  bool in_up(std::size_t t) const {
    return (y_[t] > 0 && alpha_[t] < c_) || (y_[t] < 0 && alpha_[t] > 0.0);
  }
  bool in_low(std::size_t t) const {
    return (y_[t] < 0 && alpha_[t] < c_) || (y_[t] > 0 && alpha_[t] > 0.0);
  }

  // Rounding residue next to a bound would leave an index that can never move.
  double snap(double a) const {
    const double eps = 1e-12 * c_;
    if (a < eps) return 0.0;
    if (a > c_ - eps) return c_;
    return a;
  }

  bool violates(std::size_t i) const {
    const double r = y_[i] * (b_ - g_[i]);
    return (r < -tol_ && alpha_[i] < c_) || (r > tol_ && alpha_[i] > 0.0);
  }

  // Optimizes alpha[i], alpha[j] jointly along their equality-constraint line.
  bool take_step(std::size_t i, std::size_t j, double min_step) {
    if (i == j) return false;
    const double yi = y_[i];
    const double yj = y_[j];
    const double ai_old = alpha_[i];
    const double aj_old = alpha_[j];
    double lo;
    double hi;
    if (yi != yj) {
      lo = std::max(0.0, aj_old - ai_old);
      hi = std::min(c_, c_ + aj_old - ai_old);
    } else {
      lo = std::max(0.0, ai_old + aj_old - c_);
      hi = std::min(c_, ai_old + aj_old);
    }
    if (lo >= hi) return false;

    const auto& ki = kernel_.row(i, 0);
    const auto& kj = kernel_.row(j, 1);
    const double kij = ki[j];
    const double eta = std::min(2.0 * kij - kernel_.diag(i) - kernel_.diag(j), -kMinCurvature);
    const double ei = b_ - g_[i];
    const double ej = b_ - g_[j];
    double aj = aj_old - yj * (ei - ej) / eta;
    aj = std::clamp(aj, lo, hi);
    if (std::abs(aj - aj_old) <= min_step) return false;
    double ai = ai_old + yi * yj * (aj_old - aj);
    ai = snap(std::clamp(ai, 0.0, c_));
    aj = snap(aj);
    if (ai == ai_old && aj == aj_old) return false;

    const double di = ai - ai_old;
    const double dj = aj - aj_old;
    alpha_[i] = ai;
    alpha_[j] = aj;

    const double b1 = b_ - ei - yi * di * kernel_.diag(i) - yj * dj * kij;
    const double b2 = b_ - ej - yi * di * kij - yj * dj * kernel_.diag(j);
    if (ai > 0.0 && ai < c_) {
      b_ = b1;
    } else if (aj > 0.0 && aj < c_) {
      b_ = b2;
    } else {
      b_ = 0.5 * (b1 + b2);
    }

    for (std::size_t t = 0; t < g_.size(); ++t) {
      g_[t] -= yi * di * ki[t] + yj * dj * kj[t];
    }
    return true;
  }

  std::size_t simplified_phase() {
    const std::size_t n = x_.size();
    const std::size_t max_sweeps = 1000 + 10 * n;
    std::size_t passes = 0;
    std::size_t sweeps = 0;
    std::vector<std::size_t> violators;
    while (passes < max_passes_ && sweeps < max_sweeps) {
      violators.clear();
      for (std::size_t t = 0; t < n; ++t) {
        if (violates(t)) violators.push_back(t);
      }
      std::size_t changed = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!violates(i)) continue;
        std::size_t j = i;
        if (violators.size() >= 2) {
          while (j == i) j = violators[rng_.uniform_index(violators.size())];
        } else {
          j = rng_.uniform_index(n - 1);
          if (j >= i) ++j;
        }
        if (take_step(i, j, 1e-5 * std::max(1.0, c_))) ++changed;
      }
      ++sweeps;
      passes = changed == 0 ? passes + 1 : 0;
    }
    return sweeps;
  }

  bool polish_phase() {
    const std::size_t n = x_.size();
    const std::size_t max_iterations = std::max<std::size_t>(100000, 200 * n);
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
      std::optional<std::size_t> up;
      std::optional<std::size_t> low;
      for (std::size_t t = 0; t < n; ++t) {
        if (in_up(t) && (!up || g_[t] > g_[*up])) up = t;
        if (in_low(t) && (!low || g_[t] < g_[*low])) low = t;
      }
      if (!up || !low || g_[*up] - g_[*low] <= kPolishGap) return true;
      if (!take_step(*up, *low, 0.0)) return false;
    }
    return false;
  }

  void snap_to_bounds() {
    for (auto& a : alpha_) a = snap(a);
  }

  double final_bias() const {
    double sum = 0.0;
    std::size_t free = 0;
    double up_max = -std::numeric_limits<double>::infinity();
    double low_min = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < x_.size(); ++t) {
      if (alpha_[t] > 0.0 && alpha_[t] < c_) {
        sum += g_[t];
        ++free;
      }
      if (in_up(t)) up_max = std::max(up_max, g_[t]);
      if (in_low(t)) low_min = std::min(low_min, g_[t]);
    }
    if (free > 0) return sum / static_cast<double>(free);
    if (std::isinf(up_max)) return low_min;
    if (std::isinf(low_min)) return up_max;
    return 0.5 * (up_max + low_min);
  }

  std::span<const SparseVector> x_;
  std::span<const int> y_;
  double c_;
  double tol_;
  std::size_t max_passes_;
  Rng rng_;
  KernelRows kernel_;
  std::vector<double> alpha_;
  std::vector<double> g_;
  double b_ = 0.0;
};

}  // namespace

SmoResult smo_solve_binary(std::span<const SparseVector> x, std::span<const int> y,
                           std::size_t dimension, const SvmSpec& spec) {
  validate(ModelSpec{spec});
  if (x.size() != y.size()) throw InvalidArgument("SMO: x and y differ in length");
  bool has_pos = false;
  bool has_neg = false;
  for (int label : y) {
    if (label == 1) {
      has_pos = true;
    } else if (label == -1) {
      has_neg = true;
    } else {
      throw InvalidArgument("SMO: labels must be +1 or -1");
    }
  }
  if (!has_pos || !has_neg) throw InvalidArgument("SMO: both classes must be present");
  for (const auto& v : x) {
    if (!v.empty() && v.back().column >= dimension) throw InvalidArgument("SMO: column out of range");
  }
  return SmoSolver(x, y, spec).solve(dimension);
}

double svm_dual_objective(std::span<const SparseVector> x, std::span<const int> y,
                          std::span<const double> alpha) {
  double linear = 0.0;
  double quadratic = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    linear += alpha[i];
    for (std::size_t j = 0; j < x.size(); ++j) {
      quadratic += alpha[i] * alpha[j] * y[i] * y[j] * dot(x[i], x[j]);
    }
  }
  return linear - 0.5 * quadratic;
}

double kkt_violation(std::span<const SparseVector> x, std::span<const int> y,
                     std::span<const double> alpha, std::span<const double> w, double b, double c) {
  const double eps = 1e-12 * c;
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double f = b;
    for (const auto& e : x[i]) f += w[e.column] * e.value;
    const double r = y[i] * f - 1.0;
    double v;
    if (alpha[i] <= eps) {
      v = std::max(0.0, -r);
    } else if (alpha[i] >= c - eps) {
      v = std::max(0.0, r);
    } else {
      v = std::abs(r);
    }
    worst = std::max(worst, v);
  }
  return worst;
}

double BinarySvm::decision(const SparseVector& x) const {
  double f = b;
  for (const auto& e : x) {
    if (e.column < w.size()) f += w[e.column] * e.value;
  }
  return f;
}

SvmModel svm_train_multiclass(const TermDocMatrix& matrix, const SvmSpec& spec) {
  const std::size_t n_classes = matrix.categories.size();
  if (n_classes < 2) throw InvalidArgument("SVM_SMO: need at least two classes");
  SvmModel model;
  model.spec = spec;
  std::size_t pair_index = 0;
  for (std::size_t p = 0; p < n_classes; ++p) {
    for (std::size_t q = p + 1; q < n_classes; ++q, ++pair_index) {
      std::vector<SparseVector> x;
      std::vector<int> y;
      std::vector<std::size_t> source_row;
      for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
        const auto& row = matrix.rows[r];
        if (row.label != p && row.label != q) continue;
        x.push_back(row.vector.weights);
        y.push_back(row.label == p ? 1 : -1);
        source_row.push_back(r);
      }
      SvmSpec pair_spec = spec;
      pair_spec.seed = derive_seed(spec.seed, pair_index);
      auto solved = smo_solve_binary(x, y, matrix.dimension(), pair_spec);

      BinarySvm machine;
      machine.positive = p;
      machine.negative = q;
      machine.w = std::move(solved.w);
      machine.b = solved.b;
      machine.converged = solved.converged;
      for (std::size_t i = 0; i < solved.alpha.size(); ++i) {
        if (solved.alpha[i] > 0.0) machine.support.emplace_back(source_row[i], solved.alpha[i]);
      }
      model.machines.push_back(std::move(machine));
    }
  }
  return model;
}

Prediction svm_predict(const SvmModel& model, const SparseVector& x, std::size_t n_classes) {
  std::vector<double> votes(n_classes, 0.0);
  std::vector<double> margin(n_classes, 0.0);
  for (const auto& m : model.machines) {
    const double f = m.decision(x);
    votes[f >= 0.0 ? m.positive : m.negative] += 1.0;
    margin[m.positive] += f;
    margin[m.negative] -= f;
  }
  // Votes first; the squashed margin sum lies in (-0.5, 0.5) and only breaks vote ties.
  Prediction p;
  p.scores.resize(n_classes);
  for (std::size_t c = 0; c < n_classes; ++c) {
    p.scores[c] = votes[c] + 0.5 * margin[c] / (1.0 + std::abs(margin[c]));
  }
  p.label = argmax(p.scores);
  return p;
}

}  // namespace textclf
