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

#ifndef PARAMINE_INTRA_HPP_
#define PARAMINE_INTRA_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "paramine/candidate.hpp"
#include "paramine/corpus.hpp"
#include "paramine/embedder.hpp"

namespace paramine {

struct IntraResult {
  std::vector<CandidatePair> pairs;
  // Cross-section pairs at or below the threshold but at or above
  // `below_floor`; these feed partial-paraphrase discovery.
  std::vector<CandidatePair> below_threshold;
};

struct IntraOptions {
  double threshold = 0.931;
  // Lower bound for the below-threshold pool; < 0 disables collection.
  double below_floor = -1.0;
};

// Cross-section pairs inside one paper. Only the six target sections take
// part, same-section pairs and character-identical pairs are never produced.
inline IntraResult ExtractIntra(std::span<const Sentence> paper, Embedder &embedder,
                                const IntraOptions &opts) {
  IntraResult out;
  std::vector<Sentence> eligible;
  for (const Sentence &s : paper) {
    if (s.eligible && IsTargetSection(s.section)) eligible.push_back(s);
  }
  if (eligible.size() < 2) return out;
  if (!paper.empty()) {
    for (const Sentence &s : eligible) {
      if (s.paper_id != eligible.front().paper_id) {
        throw DataError("ExtractIntra expects sentences of a single paper");
      }
    }
  }
  std::vector<SentenceVector> vecs = embedder.EmbedBatch(eligible);
  for (size_t i = 0; i < eligible.size(); ++i) {
    for (size_t j = i + 1; j < eligible.size(); ++j) {
      if (eligible[i].section == eligible[j].section) continue;
      if (eligible[i].text == eligible[j].text) continue;
      const double sim = Cosine(vecs[i].vector, vecs[j].vector);
      if (sim > opts.threshold) {
        out.pairs.push_back(
            MakeCandidate(eligible[i], eligible[j], Channel::kIntraSectionSim, sim));
      } else if (opts.below_floor >= 0.0 && sim >= opts.below_floor) {
        out.below_threshold.push_back(
            MakeCandidate(eligible[i], eligible[j], Channel::kIntraSectionSim, sim));
      }
    }
  }
  SortCandidates(out.pairs);
  SortCandidates(out.below_threshold);
  return out;
}

inline IntraResult ExtractIntra(std::span<const Sentence> paper, Embedder &embedder) {
  IntraOptions opts;
  opts.threshold = embedder.config().similarity_threshold;
  return ExtractIntra(paper, embedder, opts);
}

// Keeps the first candidate (in sorted order) per pair id.
inline std::vector<CandidatePair> DedupByPairId(std::vector<CandidatePair> pairs) {
  SortCandidates(pairs);
  std::vector<CandidatePair> out;
  for (auto &p : pairs) {
    if (!out.empty() && out.back().pair_id == p.pair_id) continue;
    out.push_back(std::move(p));
  }
  return out;
}

// Maps ExtractIntra over every paper, concatenates, dedups by canonical text
// pair.
inline IntraResult ExtractIntraCorpus(const Corpus &corpus, Embedder &embedder,
                                      const IntraOptions &opts) {
  IntraResult all;
  for (const std::string &paper_id : corpus.paper_order()) {
    const std::vector<Sentence> sentences = corpus.SentencesOf(paper_id);
    IntraResult r = ExtractIntra(sentences, embedder, opts);
    std::move(r.pairs.begin(), r.pairs.end(), std::back_inserter(all.pairs));
    std::move(r.below_threshold.begin(), r.below_threshold.end(),
              std::back_inserter(all.below_threshold));
  }
  all.pairs = DedupByPairId(std::move(all.pairs));
  all.below_threshold = DedupByPairId(std::move(all.below_threshold));
  return all;
}

inline IntraResult ExtractIntraCorpus(const Corpus &corpus, Embedder &embedder) {
  IntraOptions opts;
  opts.threshold = embedder.config().similarity_threshold;
  return ExtractIntraCorpus(corpus, embedder, opts);
}

}  // namespace paramine

#endif  // PARAMINE_INTRA_HPP_
