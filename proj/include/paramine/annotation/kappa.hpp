// Copyright 2026 The paramine Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PARAMINE_ANNOTATION_KAPPA_HPP_
#define PARAMINE_ANNOTATION_KAPPA_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <span>

#include "paramine/error.hpp"

namespace paramine::annotation {

// Unweighted Cohen's kappa of `w` against `m`.
inline double CohensKappa(std::span<const int> w, std::span<const int> m) {
  if (w.size() != m.size()) throw DataError("kappa sequences differ in length");
  if (w.empty()) throw DataError("kappa needs at least one item");
  const double n = static_cast<double>(w.size());
  std::map<int, double> mw, mm;
  size_t agree = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    mw[w[i]] += 1.0;
    mm[m[i]] += 1.0;
    if (w[i] == m[i]) ++agree;
  }
  const double po = static_cast<double>(agree) / n;
  double pe = 0.0;
  for (const auto &[label, count] : mw) {
    auto it = mm.find(label);
    if (it != mm.end()) pe += (count / n) * (it->second / n);
  }
  if (pe >= 1.0) {
    if (po >= 1.0) return 1.0;
    throw DataError("degenerate marginals");
  }
  return std::clamp((po - pe) / (1.0 - pe), -1.0, 1.0);
}

// Modal label of the other workers' judgments; ties go to the lower label.
// Returns nullopt when fewer than two others judged the item.
inline std::optional<int> MajorityVote(std::span<const int> others) {
  if (others.size() < 2) return std::nullopt;
  std::map<int, int> counts;
  for (int v : others) ++counts[v];
  int best = counts.begin()->first;
  int best_count = 0;
  for (const auto &[label, count] : counts) {
    if (count > best_count) {
      best = label;
      best_count = count;
    }
  }
  return best;
}

}  // namespace paramine::annotation

#endif  // PARAMINE_ANNOTATION_KAPPA_HPP_
