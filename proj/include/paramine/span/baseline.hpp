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

#ifndef PARAMINE_SPAN_BASELINE_HPP_
#define PARAMINE_SPAN_BASELINE_HPP_

#include <string>
#include <vector>

#include "paramine/embedder.hpp"
#include "paramine/util/text.hpp"

namespace paramine {

// Byte range [begin, end) of one clause inside the source sentence, trimmed,
// delimiter excluded.
struct ClauseSpan {
  size_t begin = 0;
  size_t end = 0;
};

// Splits on , ; : . (when followed by whitespace or end of text) and on the
// em dash. Empty clauses are dropped.
inline std::vector<ClauseSpan> SplitClauses(std::string_view text) {
  static constexpr std::string_view kEmDash = "\xE2\x80\x94";
  std::vector<ClauseSpan> out;
  auto emit = [&](size_t b, size_t e) {
    while (b < e && IsAsciiSpace(text[b])) ++b;
    while (e > b && IsAsciiSpace(text[e - 1])) --e;
    if (e > b) out.push_back({b, e});
  };
  size_t start = 0;
  for (size_t i = 0; i < text.size();) {
    if (text.compare(i, kEmDash.size(), kEmDash) == 0) {
      emit(start, i);
      i += kEmDash.size();
      start = i;
      continue;
    }
    const char c = text[i];
    if ((c == ',' || c == ';' || c == ':' || c == '.') &&
        (i + 1 == text.size() || IsAsciiSpace(text[i + 1]))) {
      emit(start, i);
      start = i + 1;
    }
    ++i;
  }
  emit(start, text.size());
  return out;
}

// Text of the contiguous clause run [first, last].
inline std::string ClauseRunText(std::string_view text, const std::vector<ClauseSpan> &clauses,
                                 size_t first, size_t last) {
  return std::string(text.substr(clauses[first].begin, clauses[last].end - clauses[first].begin));
}

struct ClauseChoice {
  std::string text;
  size_t first = 0;
  size_t last = 0;
  size_t clause_count = 0;  // clauses in the whole sentence
  double similarity = 0.0;
};

// Contiguous clause run of `long_text` whose embedding is most similar to
// `short_text`. Ties go to the run with fewer clauses, then the earlier one.
inline ClauseChoice BestClauseBaseline(const std::string &short_text,
                                       const std::string &long_text, Embedder &embedder) {
  const std::vector<ClauseSpan> clauses = SplitClauses(long_text);
  ClauseChoice best;
  if (clauses.empty()) {
    best.text = std::string(Trim(long_text));
    return best;
  }
  best.clause_count = clauses.size();
  const std::vector<float> target = embedder.EmbedText(short_text);
  bool have = false;
  // Enumerate by run length so that the first maximum found is already the
  // shortest, earliest one; later runs must be strictly better.
  for (size_t len = 1; len <= clauses.size(); ++len) {
    for (size_t first = 0; first + len <= clauses.size(); ++first) {
      const size_t last = first + len - 1;
      std::string run = ClauseRunText(long_text, clauses, first, last);
      const double sim = Cosine(target, embedder.EmbedText(run));
      if (!have || sim > best.similarity) {
        have = true;
        best.similarity = sim;
        best.first = first;
        best.last = last;
        best.text = std::move(run);
      }
    }
  }
  return best;
}

}  // namespace paramine

#endif  // PARAMINE_SPAN_BASELINE_HPP_
