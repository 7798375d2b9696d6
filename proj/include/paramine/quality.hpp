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

#ifndef PARAMINE_QUALITY_HPP_
#define PARAMINE_QUALITY_HPP_

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "paramine/candidate.hpp"
#include "paramine/encoder.hpp"
#include "paramine/error.hpp"

namespace paramine {

struct FilterConfig {
  // Identifies the token encoder and layer used for scoring.
  std::string scorer_tag = "hashctx-v1-d128-l12@8";
  size_t scorer_layer = 8;
  double definition_score_min = 0.6;
  double definition_plr_max = 2.0;
  double general_score_min = 0.7;
  double general_plr_max = 1.0;

  void Validate() const {
    for (double t : {definition_score_min, general_score_min}) {
      if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("score thresholds must lie in [0, 1]");
    }
    if (!(definition_plr_max > 0.0) || !(general_plr_max > 0.0)) {
      throw ConfigError("PLR maxima must be positive");
    }
  }
};

// Paraphrase length rate |La - Lb| / min(La, Lb) over token counts.
inline double Plr(size_t len_a, size_t len_b) {
  if (len_a == 0 || len_b == 0) throw DataError("empty sentence");
  const double diff = len_a > len_b ? static_cast<double>(len_a - len_b)
                                    : static_cast<double>(len_b - len_a);
  return diff / static_cast<double>(std::min(len_a, len_b));
}

struct MatchScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Greedy token matching over contextual token states, no idf weighting:
// recall averages, over reference tokens, the best cosine to any candidate
// token; precision is the mirror image; F1 is their harmonic mean.
class TokenMatchScorer {
 public:
  TokenMatchScorer(const Encoder &encoder, size_t layer) : encoder_(encoder), layer_(layer) {}

  std::string tag() const { return encoder_.tag() + "@" + std::to_string(layer_); }

  MatchScore Score(const std::string &candidate, const std::string &reference) const {
    const TokenMatrix c = States(candidate);
    const TokenMatrix r = States(reference);
    std::vector<double> nc(c.rows()), nr(r.rows());
    for (size_t i = 0; i < c.rows(); ++i) nc[i] = Norm(c.row(i));
    for (size_t j = 0; j < r.rows(); ++j) nr[j] = Norm(r.row(j));
    for (double n : nc) if (n == 0.0) throw DataError("degenerate token embedding");
    for (double n : nr) if (n == 0.0) throw DataError("degenerate token embedding");

    std::vector<double> best_c(c.rows(), -1.0), best_r(r.rows(), -1.0);
    for (size_t i = 0; i < c.rows(); ++i) {
      for (size_t j = 0; j < r.rows(); ++j) {
        const double sim = Dot(c.row(i), r.row(j)) / (nc[i] * nr[j]);
        best_c[i] = std::max(best_c[i], sim);
        best_r[j] = std::max(best_r[j], sim);
      }
    }
    MatchScore s;
    for (double v : best_c) s.precision += v;
    for (double v : best_r) s.recall += v;
    s.precision /= static_cast<double>(best_c.size());
    s.recall /= static_cast<double>(best_r.size());
    const double denom = s.precision + s.recall;
    s.f1 = denom == 0.0 ? 0.0 : 2.0 * s.precision * s.recall / denom;
    return s;
  }

  double F1(const std::string &candidate, const std::string &reference) const {
    return Score(candidate, reference).f1;
  }

 private:
  TokenMatrix States(const std::string &text) const {
    std::vector<std::string> tokens = SplitWhitespace(text);
    if (tokens.empty()) throw DataError("empty text in token matching");
    if (tokens.size() > encoder_.max_tokens()) tokens.resize(encoder_.max_tokens());
    return encoder_.TokenStates(tokens, layer_);
  }

  const Encoder &encoder_;
  size_t layer_;
};

// Keep predicate with strict inequalities: DEFINITION uses the loose
// thresholds, every other channel the general ones.
inline bool PassesGate(Channel channel, double score, double plr, const FilterConfig &cfg) {
  if (channel == Channel::kDefinition) {
    return score > cfg.definition_score_min && plr < cfg.definition_plr_max;
  }
  return score > cfg.general_score_min && plr < cfg.general_plr_max;
}

// Re-applies the gate using scores already stored on the candidates.
inline void ApplyGates(std::vector<CandidatePair> &candidates, const FilterConfig &cfg) {
  for (CandidatePair &p : candidates) {
    if (!p.quality_score || !p.plr) {
      p.kept = false;
      if (p.filter_reason.empty()) p.filter_reason = "unscored";
      continue;
    }
    p.kept = PassesGate(p.channel, *p.quality_score, *p.plr, cfg);
    p.filter_reason = p.kept ? "" : "below gate";
  }
}

// Scores every candidate, stores quality_score and plr, and sets `kept`.
inline void ApplyFilters(std::vector<CandidatePair> &candidates, const FilterConfig &cfg,
                         const TokenMatchScorer &scorer) {
  cfg.Validate();
  for (CandidatePair &p : candidates) {
    try {
      p.plr = Plr(p.sent_a.token_count, p.sent_b.token_count);
      p.quality_score = scorer.F1(p.sent_b.text, p.sent_a.text);
      p.filter_reason.clear();
    } catch (const DataError &e) {
      p.kept = false;
      p.filter_reason = std::string("scoring failed: ") + e.what();
      continue;
    }
  }
  ApplyGates(candidates, cfg);
}

// One candidate per canonical text pair. Among duplicates the highest
// quality_score wins; all source channels are recorded on the survivor.
// Pairs of identical sentences are dropped.
inline std::vector<CandidatePair> Dedup(std::vector<CandidatePair> candidates) {
  SortCandidates(candidates);
  std::vector<CandidatePair> out;
  auto score = [](const CandidatePair &p) {
    return p.quality_score.value_or(-std::numeric_limits<double>::infinity());
  };
  for (CandidatePair &p : candidates) {
    if (p.sent_a.text == p.sent_b.text) continue;
    if (!out.empty() && out.back().pair_id == p.pair_id) {
      CandidatePair &cur = out.back();
      std::set<Channel> channels = cur.channels;
      channels.insert(p.channels.begin(), p.channels.end());
      channels.insert(p.channel);
      if (score(p) > score(cur)) cur = std::move(p);
      cur.channels = std::move(channels);
      continue;
    }
    p.channels.insert(p.channel);
    out.push_back(std::move(p));
  }
  return out;
}

// Final dataset record.
inline Json FinalRecordToJson(const CandidatePair &p) {
  Json channels = Json::array();
  for (Channel c : p.channels) channels.push_back(ChannelName(c));
  Json j{{"id", p.pair_id},
         {"sentence_a", p.sent_a.text},
         {"sentence_b", p.sent_b.text},
         {"channels", channels},
         {"similarity", p.similarity}};
  j["quality_score"] = p.quality_score ? Json(*p.quality_score) : Json(nullptr);
  j["plr"] = p.plr ? Json(*p.plr) : Json(nullptr);
  return j;
}

struct FinalRecord {
  std::string id;
  std::string sentence_a;
  std::string sentence_b;
  std::vector<std::string> channels;
  double similarity = 0.0;
  double quality_score = 0.0;
  double plr = 0.0;
};

inline FinalRecord FinalRecordFromJson(const Json &j) {
  FinalRecord r;
  r.id = j.at("id").get<std::string>();
  r.sentence_a = j.at("sentence_a").get<std::string>();
  r.sentence_b = j.at("sentence_b").get<std::string>();
  if (j.contains("channels")) r.channels = j.at("channels").get<std::vector<std::string>>();
  r.similarity = j.value("similarity", 0.0);
  if (j.contains("quality_score") && j["quality_score"].is_number()) {
    r.quality_score = j["quality_score"].get<double>();
  }
  if (j.contains("plr") && j["plr"].is_number()) r.plr = j["plr"].get<double>();
  return r;
}

inline void WriteFinalDataset(const fs::path &path, const std::vector<CandidatePair> &pairs) {
  std::vector<Json> records;
  for (const auto &p : pairs) records.push_back(FinalRecordToJson(p));
  AtomicWriteFile(path, ToJsonLines(records));
}

inline std::vector<FinalRecord> ReadFinalDataset(const fs::path &path) {
  std::vector<FinalRecord> out;
  for (const Json &j : ReadJsonLines(path)) out.push_back(FinalRecordFromJson(j));
  return out;
}

// Two-column export: sentence_a TAB sentence_b.
inline std::string ToTsv(const std::vector<FinalRecord> &records) {
  std::string out;
  for (const auto &r : records) {
    out += r.sentence_a;
    out += '\t';
    out += r.sentence_b;
    out += '\n';
  }
  return out;
}

}  // namespace paramine

#endif  // PARAMINE_QUALITY_HPP_
