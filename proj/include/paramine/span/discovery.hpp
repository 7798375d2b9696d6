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

#ifndef PARAMINE_SPAN_DISCOVERY_HPP_
#define PARAMINE_SPAN_DISCOVERY_HPP_

#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "paramine/candidate.hpp"
#include "paramine/embedder.hpp"
#include "paramine/quality.hpp"
#include "paramine/span/baseline.hpp"
#include "paramine/span/model.hpp"

namespace paramine {

enum class RejectionReason { kFullSentenceSpan, kEmptySpan, kNoAnswer };

inline const char *RejectionName(RejectionReason r) {
  switch (r) {
    case RejectionReason::kFullSentenceSpan: return "FULL_SENTENCE_SPAN";
    case RejectionReason::kEmptySpan: return "EMPTY_SPAN";
    case RejectionReason::kNoAnswer: return "NO_ANSWER";
  }
  return "NO_ANSWER";
}

struct DiscoveryResult {
  std::string short_sentence;
  std::string long_sentence;
  std::string extracted_span_text;
  // Inclusive token range in the long sentence; meaningless for NO_ANSWER.
  size_t span_first = 0;
  size_t span_last = 0;
  bool accepted = false;
  std::optional<RejectionReason> rejection_reason;
};

// Drops trailing clause punctuation left on a span's last token.
inline std::string TrimSpanPunct(std::string s) {
  while (!s.empty() && (s.back() == ',' || s.back() == ';' || s.back() == ':')) s.pop_back();
  return std::string(Trim(s));
}

// Classifies a token range of `long_tokens` as accepted or rejected.
inline DiscoveryResult ClassifySpan(const std::string &short_text, const std::string &long_text,
                                    const std::vector<std::string> &long_tokens, size_t first,
                                    size_t last, size_t min_span_tokens) {
  DiscoveryResult r;
  r.short_sentence = short_text;
  r.long_sentence = long_text;
  r.span_first = first;
  r.span_last = last;
  r.extracted_span_text = TrimSpanPunct(Join(long_tokens, " ", first, last + 1));
  if (first == 0 && last + 1 == long_tokens.size()) {
    r.rejection_reason = RejectionReason::kFullSentenceSpan;
  } else if (r.extracted_span_text.empty() || last - first + 1 < min_span_tokens) {
    r.rejection_reason = RejectionReason::kEmptySpan;
  } else {
    r.accepted = true;
  }
  return r;
}

// Trained span model bound to the encoder it was trained with.
class SpanDiscoverer {
 public:
  SpanDiscoverer(const SpanModel &model, const SpanFeaturizer &featurizer)
      : model_(model), featurizer_(featurizer) {
    const std::string expected =
        featurizer.encoder().tag() + "@" + std::to_string(featurizer.layer());
    if (model.encoder_tag() != expected) {
      throw ConfigError("span model was trained with encoder " + model.encoder_tag() +
                        ", not " + expected);
    }
  }

  // Short sentence is input 1, long sentence input 2.
  DiscoveryResult PredictSpan(const std::string &short_text, const std::string &long_text) const {
    const auto t1 = SplitWhitespace(short_text);
    auto t2 = SplitWhitespace(long_text);
    if (t1.empty() || t2.empty()) throw DataError("PredictSpan needs non-empty sentences");
    if (t1.size() > t2.size()) throw DataError("short sentence is longer than long sentence");
    const size_t max_len = model_.config().max_sequence_length;
    if (t1.size() + 3 > max_len) throw DataError("short sentence exceeds max_sequence_length");
    if (t1.size() + 2 + t2.size() > max_len) {
      PARAMINE_LOG(Warning) << "truncating long sentence to fit max_sequence_length";
      t2.resize(max_len - t1.size() - 2);
    }
    const SpanPrediction p = model_.Predict(featurizer_.Compute(t1, t2));
    if (p.no_answer) {
      DiscoveryResult r;
      r.short_sentence = short_text;
      r.long_sentence = long_text;
      r.rejection_reason = RejectionReason::kNoAnswer;
      return r;
    }
    const auto full = SplitWhitespace(long_text);
    return ClassifySpan(short_text, long_text, full, p.start, p.end,
                        model_.config().min_span_tokens);
  }

  const SpanModel &model() const { return model_; }

 private:
  const SpanModel &model_;
  const SpanFeaturizer &featurizer_;
};

// Best-clause baseline in discovery-result form.
inline DiscoveryResult BaselineDiscovery(const std::string &short_text,
                                         const std::string &long_text, Embedder &embedder,
                                         size_t min_span_tokens) {
  const ClauseChoice c = BestClauseBaseline(short_text, long_text, embedder);
  const auto tokens = SplitWhitespace(long_text);
  DiscoveryResult r;
  r.short_sentence = short_text;
  r.long_sentence = long_text;
  r.extracted_span_text = TrimSpanPunct(c.text);
  const size_t n = SplitWhitespace(r.extracted_span_text).size();
  if (c.clause_count <= 1 || (c.first == 0 && c.last + 1 == c.clause_count)) {
    r.rejection_reason = RejectionReason::kFullSentenceSpan;
  } else if (n < min_span_tokens) {
    r.rejection_reason = RejectionReason::kEmptySpan;
  } else {
    r.accepted = true;
  }
  return r;
}

struct DiscoverReport {
  size_t processed = 0;
  size_t accepted = 0;
  size_t skipped_above_threshold = 0;
  std::map<std::string, size_t> rejected;
};

inline Json DiscoverReportToJson(const DiscoverReport &r) {
  return Json{{"processed", r.processed},
              {"accepted", r.accepted},
              {"skipped_above_threshold", r.skipped_above_threshold},
              {"rejected", r.rejected}};
}

// Runs the span model over pairs that failed the sentence-level gate. Each
// accepted span becomes a PDBERT_PARTIAL candidate (short sentence, span).
inline std::vector<CandidatePair> DiscoverPartial(const std::vector<CandidatePair> &below,
                                                  const SpanDiscoverer &discoverer,
                                                  Embedder &embedder, double threshold,
                                                  DiscoverReport *report = nullptr) {
  DiscoverReport local;
  DiscoverReport &rep = report ? *report : local;
  std::vector<CandidatePair> out;
  for (const CandidatePair &p : below) {
    if (p.similarity > threshold) {
      ++rep.skipped_above_threshold;
      continue;
    }
    ++rep.processed;
    const bool a_short = p.sent_a.token_count <= p.sent_b.token_count;
    const Sentence &shorter = a_short ? p.sent_a : p.sent_b;
    const Sentence &longer = a_short ? p.sent_b : p.sent_a;
    const DiscoveryResult r = discoverer.PredictSpan(shorter.text, longer.text);
    if (!r.accepted) {
      ++rep.rejected[RejectionName(*r.rejection_reason)];
      continue;
    }
    if (r.extracted_span_text == shorter.text || r.extracted_span_text == longer.text) {
      ++rep.rejected[RejectionName(RejectionReason::kFullSentenceSpan)];
      continue;
    }
    Sentence span = longer;
    span.sentence_id = longer.sentence_id + "#" + std::to_string(r.span_first) + "-" +
                       std::to_string(r.span_last);
    span.text = r.extracted_span_text;
    span.token_count = static_cast<uint32_t>(CountTokens(span.text));
    span.char_count = CountChars(span.text);
    const double sim = Cosine(embedder.EmbedText(shorter.text), embedder.EmbedText(span.text));
    out.push_back(MakeCandidate(shorter, std::move(span), Channel::kPdbertPartial, sim));
    ++rep.accepted;
  }
  SortCandidates(out);
  return out;
}

inline double PairsPerMinute(size_t pairs, double seconds) {
  if (!(seconds > 0.0)) throw DataError("zero elapsed time");
  return static_cast<double>(pairs) / (seconds / 60.0);
}

struct DiscoveryMethod {
  std::string name;
  std::function<DiscoveryResult(const std::string &, const std::string &)> run;
};

struct EvalPair {
  std::string short_text;
  std::string long_text;
};

struct MethodReport {
  std::string method;
  size_t processed = 0;
  double elapsed_seconds = 0.0;
  double speed = 0.0;       // pairs per minute
  size_t size = 0;          // accepted, excluding full-sentence spans
  size_t size_filtered = 0; // of those, quality above the general threshold
  double quality = 0.0;     // mean token-matching F1 x 100 over `size`
};

using SecondsClock = std::function<double()>;

inline SecondsClock SteadyClock() {
  return [] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
  };
}

// Runs every method over the same pairs (stopping a method once
// `time_budget_seconds` is spent) and reports speed, size of valuable
// extractions and mean quality between each short sentence and its span.
inline std::vector<MethodReport> EvaluateDiscovery(const std::vector<DiscoveryMethod> &methods,
                                                   const std::vector<EvalPair> &pairs,
                                                   const TokenMatchScorer &scorer,
                                                   double quality_threshold,
                                                   double time_budget_seconds,
                                                   const SecondsClock &clock = SteadyClock()) {
  std::vector<MethodReport> reports;
  for (const DiscoveryMethod &m : methods) {
    MethodReport rep;
    rep.method = m.name;
    std::vector<DiscoveryResult> results;
    const double t0 = clock();
    for (const EvalPair &p : pairs) {
      if (clock() - t0 >= time_budget_seconds) break;
      results.push_back(m.run(p.short_text, p.long_text));
      ++rep.processed;
    }
    rep.elapsed_seconds = clock() - t0;
    rep.speed = PairsPerMinute(rep.processed, rep.elapsed_seconds);
    double total = 0.0;
    for (const DiscoveryResult &r : results) {
      if (!r.accepted) continue;
      ++rep.size;
      const double q = scorer.F1(r.extracted_span_text, r.short_sentence);
      total += q;
      if (q > quality_threshold) ++rep.size_filtered;
    }
    rep.quality = rep.size ? 100.0 * total / static_cast<double>(rep.size) : 0.0;
    reports.push_back(rep);
  }
  return reports;
}

// Plain-text table: Method, Speed, Size, Size (filtered), quality score.
inline std::string FormatDiscoveryTable(const std::vector<MethodReport> &reports) {
  std::ostringstream out;
  out << std::left << std::setw(16) << "Method" << std::right << std::setw(10) << "Speed"
      << std::setw(8) << "Size" << std::setw(16) << "Size (filtered)" << std::setw(16)
      << "quality score" << '\n';
  out << std::fixed << std::setprecision(2);
  for (const auto &r : reports) {
    out << std::left << std::setw(16) << r.method << std::right << std::setw(10) << r.speed
        << std::setw(8) << r.size << std::setw(16) << r.size_filtered << std::setw(16)
        << r.quality << '\n';
  }
  return out.str();
}

}  // namespace paramine

#endif  // PARAMINE_SPAN_DISCOVERY_HPP_
