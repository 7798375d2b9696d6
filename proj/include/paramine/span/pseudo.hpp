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

#ifndef PARAMINE_SPAN_PSEUDO_HPP_
#define PARAMINE_SPAN_PSEUDO_HPP_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "paramine/error.hpp"
#include "paramine/util/io.hpp"
#include "paramine/util/rng.hpp"
#include "paramine/util/text.hpp"

namespace paramine {

enum class NoAnswerMode {
  // Absent B: gold span is the sequence-start sentinel (position 0).
  kSentinel,
  // Absent B: redraw the inclusion flags until B is present.
  kResample,
};

struct SpanModelConfig {
  size_t max_sequence_length = 192;
  double learning_rate = 0.01;
  size_t epochs = 12;
  size_t batch_size = 16;
  size_t hidden_units = 32;
  uint64_t seed = 13;
  double p_c = 0.8;
  double p_b = 0.5;
  double p_d = 0.8;
  NoAnswerMode no_answer_mode = NoAnswerMode::kSentinel;
  bool both_orientations = true;
  double held_out_fraction = 0.1;
  size_t min_span_tokens = 4;
  // Encoder layer whose token states feed the span features.
  size_t feature_layer = 4;

  void Validate() const {
    for (double p : {p_c, p_b, p_d}) {
      if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("inclusion probabilities must lie in [0, 1]");
    }
    if (p_b == 0.0 && no_answer_mode == NoAnswerMode::kResample) {
      throw ConfigError("p_b = 0 cannot be combined with resample mode");
    }
    if (p_c == 0.0 && p_b == 0.0 && p_d == 0.0) {
      throw ConfigError("at least one inclusion probability must be positive");
    }
    if (max_sequence_length < 8) throw ConfigError("max_sequence_length too small");
    if (epochs == 0 || batch_size == 0 || hidden_units == 0) {
      throw ConfigError("epochs, batch_size and hidden_units must be positive");
    }
    if (!(held_out_fraction >= 0.0 && held_out_fraction < 1.0)) {
      throw ConfigError("held_out_fraction must lie in [0, 1)");
    }
  }
};

struct PseudoRecipe {
  bool has_c = false;
  bool has_b = false;
  bool has_d = false;
  std::string a_id;
  std::string b_id;
  std::string c_id;
  std::string d_id;

  bool operator==(const PseudoRecipe &) const = default;
};

// Synthetic span-extraction instance. Positions index the model input
// sequence [CLS] input1-tokens [SEP] input2-tokens; position 0 is [CLS].
struct PseudoExample {
  std::string input1;
  std::string input2;
  size_t span_start = 0;
  size_t span_end = 0;
  bool has_answer = false;
  PseudoRecipe recipe;

  bool operator==(const PseudoExample &) const = default;
};

// Offset of the first input2 token in the model sequence.
inline size_t Input2Offset(size_t input1_tokens) { return input1_tokens + 2; }

struct PoolSentence {
  std::string id;
  std::string text;
};

struct SeedPair {
  std::string id_a;
  std::string text_a;
  std::string id_b;
  std::string text_b;
};

// Builds one pseudo example from the known paraphrase (A, B): input2 joins
// C, B, D (each included independently with p_c, p_b, p_d) with single
// spaces after stripping the ending punctuation of C and B.
inline PseudoExample BuildPseudoExample(const PoolSentence &a, const PoolSentence &b,
                                        std::span<const PoolSentence> pool,
                                        const SpanModelConfig &cfg, Rng &rng) {
  const std::string b_stripped = StripEndingPunct(b.text);
  if (b_stripped.empty()) throw DataError("sentence B is empty after stripping punctuation");
  if (SplitWhitespace(a.text).empty()) throw DataError("sentence A is empty");

  size_t usable = 0;
  for (const auto &p : pool) {
    if (p.text != a.text && p.text != b.text && !StripEndingPunct(p.text).empty()) ++usable;
  }
  if (usable < 2) throw DataError("sentence pool too small to draw distractors");

  auto draw = [&]() -> const PoolSentence & {
    while (true) {
      const PoolSentence &p = pool[rng.Index(pool.size())];
      if (p.text != a.text && p.text != b.text && !StripEndingPunct(p.text).empty()) return p;
    }
  };

  PseudoExample ex;
  bool c = false, bb = false, d = false;
  do {
    c = rng.Bernoulli(cfg.p_c);
    bb = rng.Bernoulli(cfg.p_b);
    d = rng.Bernoulli(cfg.p_d);
  } while (!(c || bb || d) || (cfg.no_answer_mode == NoAnswerMode::kResample && !bb));

  const PoolSentence &sc = draw();
  const PoolSentence &sd = draw();

  std::vector<std::string> parts;
  size_t b_begin = 0;
  if (c) {
    parts.push_back(StripEndingPunct(sc.text));
    b_begin = SplitWhitespace(parts.back()).size();
  }
  if (bb) parts.push_back(b_stripped);
  if (d) parts.push_back(std::string(Trim(sd.text)));

  ex.input1 = std::string(Trim(a.text));
  ex.input2 = Join(parts, " ");
  ex.recipe = {c, bb, d, a.id, b.id, c ? sc.id : "", d ? sd.id : ""};
  ex.has_answer = bb;
  if (bb) {
    const size_t offset = Input2Offset(SplitWhitespace(ex.input1).size());
    ex.span_start = offset + b_begin;
    ex.span_end = ex.span_start + SplitWhitespace(b_stripped).size() - 1;
  }
  return ex;
}

// One example per seed pair per pass; with both_orientations the roles of
// the two sentences are swapped on a fair coin.
inline std::vector<PseudoExample> BuildPseudoDataset(std::span<const SeedPair> pairs,
                                                     std::span<const PoolSentence> pool,
                                                     const SpanModelConfig &cfg, Rng &rng,
                                                     size_t passes = 1) {
  cfg.Validate();
  if (pairs.empty()) throw DataError("no seed paraphrase pairs");
  std::vector<PseudoExample> out;
  out.reserve(pairs.size() * passes);
  for (size_t pass = 0; pass < passes; ++pass) {
    for (const SeedPair &p : pairs) {
      PoolSentence a{p.id_a, p.text_a}, b{p.id_b, p.text_b};
      if (cfg.both_orientations && rng.Bernoulli(0.5)) std::swap(a, b);
      out.push_back(BuildPseudoExample(a, b, pool, cfg, rng));
    }
  }
  return out;
}

// Input2 tokens covered by the gold span.
inline std::string DecodeGoldSpan(const PseudoExample &ex) {
  if (!ex.has_answer) return "";
  const auto t1 = SplitWhitespace(ex.input1);
  const auto t2 = SplitWhitespace(ex.input2);
  const size_t off = Input2Offset(t1.size());
  if (ex.span_start < off || ex.span_end >= off + t2.size() || ex.span_end < ex.span_start) {
    throw DataError("gold span outside input2");
  }
  return Join(t2, " ", ex.span_start - off, ex.span_end - off + 1);
}

inline Json PseudoExampleToJson(const PseudoExample &ex) {
  return Json{{"input1", ex.input1},
              {"input2", ex.input2},
              {"span_start", ex.span_start},
              {"span_end", ex.span_end},
              {"has_answer", ex.has_answer},
              {"recipe",
               {{"C", ex.recipe.has_c},
                {"B", ex.recipe.has_b},
                {"D", ex.recipe.has_d},
                {"a_id", ex.recipe.a_id},
                {"b_id", ex.recipe.b_id},
                {"c_id", ex.recipe.c_id},
                {"d_id", ex.recipe.d_id}}}};
}

inline PseudoExample PseudoExampleFromJson(const Json &j) {
  PseudoExample ex;
  ex.input1 = j.at("input1").get<std::string>();
  ex.input2 = j.at("input2").get<std::string>();
  ex.span_start = j.at("span_start").get<size_t>();
  ex.span_end = j.at("span_end").get<size_t>();
  ex.has_answer = j.at("has_answer").get<bool>();
  const Json &r = j.at("recipe");
  ex.recipe = {r.value("C", false),          r.value("B", false),
               r.value("D", false),          r.value("a_id", std::string()),
               r.value("b_id", std::string()), r.value("c_id", std::string()),
               r.value("d_id", std::string())};
  return ex;
}

}  // namespace paramine

#endif  // PARAMINE_SPAN_PSEUDO_HPP_
