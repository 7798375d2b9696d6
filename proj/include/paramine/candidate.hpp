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

#ifndef PARAMINE_CANDIDATE_HPP_
#define PARAMINE_CANDIDATE_HPP_

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "paramine/corpus.hpp"
#include "paramine/util/hash.hpp"
#include "paramine/util/io.hpp"

namespace paramine {

enum class Channel { kIntraSectionSim, kPdbertPartial, kDefinition, kCitation };

inline const char *ChannelName(Channel c) {
  switch (c) {
    case Channel::kIntraSectionSim: return "INTRA_SECTION_SIM";
    case Channel::kPdbertPartial: return "PDBERT_PARTIAL";
    case Channel::kDefinition: return "DEFINITION";
    case Channel::kCitation: return "CITATION";
  }
  return "INTRA_SECTION_SIM";
}

inline Channel ChannelFromName(std::string_view name) {
  for (Channel c : {Channel::kIntraSectionSim, Channel::kPdbertPartial, Channel::kDefinition,
                    Channel::kCitation}) {
    if (name == ChannelName(c)) return c;
  }
  throw DataError("unknown channel: " + std::string(name));
}

// Content-derived pair id over the canonical text pair.
inline std::string PairId(const std::string &text_a, const std::string &text_b) {
  std::string key = text_a;
  key += '\x1f';
  key += text_b;
  return HexDigest(Fnv1a64(key));
}

struct CandidatePair {
  std::string pair_id;
  Sentence sent_a;
  Sentence sent_b;
  Channel channel = Channel::kIntraSectionSim;
  // All channels that produced this text pair (filled by Dedup).
  std::set<Channel> channels;
  double similarity = 0.0;
  std::optional<double> quality_score;
  std::optional<double> plr;
  bool kept = false;
  std::string filter_reason;
};

// Orders the two sentences so that sent_a.text <= sent_b.text and assigns the
// content-derived pair id.
inline CandidatePair MakeCandidate(Sentence a, Sentence b, Channel channel, double similarity) {
  if (b.text < a.text) std::swap(a, b);
  CandidatePair p;
  p.pair_id = PairId(a.text, b.text);
  p.sent_a = std::move(a);
  p.sent_b = std::move(b);
  p.channel = channel;
  p.channels = {channel};
  p.similarity = similarity;
  return p;
}

inline bool CandidateLess(const CandidatePair &x, const CandidatePair &y) {
  if (x.pair_id != y.pair_id) return x.pair_id < y.pair_id;
  if (x.channel != y.channel) return x.channel < y.channel;
  return std::tie(x.sent_a.sentence_id, x.sent_b.sentence_id) <
         std::tie(y.sent_a.sentence_id, y.sent_b.sentence_id);
}

// Stable deterministic output order: by pair id, then channel, then ids.
inline void SortCandidates(std::vector<CandidatePair> &pairs) {
  std::sort(pairs.begin(), pairs.end(), CandidateLess);
}

// Candidate file record. The flat fields (paper_ids, sections, texts,
// similarity) are the shared exchange format; "sentences" carries the full
// sentence records so that later stages can rebuild the pair.
inline Json CandidateToJson(const CandidatePair &p) {
  Json channels = Json::array();
  for (Channel c : p.channels) channels.push_back(ChannelName(c));
  Json j{{"pair_id", p.pair_id},
         {"channel", ChannelName(p.channel)},
         {"channels", channels},
         {"paper_ids", {p.sent_a.paper_id, p.sent_b.paper_id}},
         {"sections", {SectionName(p.sent_a.section), SectionName(p.sent_b.section)}},
         {"texts", {p.sent_a.text, p.sent_b.text}},
         {"similarity", p.similarity},
         {"sentences", {SentenceToJson(p.sent_a), SentenceToJson(p.sent_b)}},
         {"kept", p.kept}};
  if (p.quality_score) j["quality_score"] = *p.quality_score;
  if (p.plr) j["plr"] = *p.plr;
  if (!p.filter_reason.empty()) j["filter_reason"] = p.filter_reason;
  return j;
}

inline CandidatePair CandidateFromJson(const Json &j) {
  CandidatePair p;
  p.pair_id = j.at("pair_id").get<std::string>();
  p.channel = ChannelFromName(j.at("channel").get<std::string>());
  if (j.contains("channels")) {
    for (const auto &c : j.at("channels")) p.channels.insert(ChannelFromName(c.get<std::string>()));
  } else {
    p.channels = {p.channel};
  }
  p.sent_a = SentenceFromJson(j.at("sentences").at(0));
  p.sent_b = SentenceFromJson(j.at("sentences").at(1));
  p.similarity = j.at("similarity").get<double>();
  if (j.contains("quality_score")) p.quality_score = j.at("quality_score").get<double>();
  if (j.contains("plr")) p.plr = j.at("plr").get<double>();
  p.kept = j.value("kept", false);
  p.filter_reason = j.value("filter_reason", std::string());
  return p;
}

inline void WriteCandidates(const fs::path &path, const std::vector<CandidatePair> &pairs) {
  std::vector<Json> records;
  records.reserve(pairs.size());
  for (const auto &p : pairs) records.push_back(CandidateToJson(p));
  AtomicWriteFile(path, ToJsonLines(records));
}

inline std::vector<CandidatePair> ReadCandidates(const fs::path &path) {
  std::vector<CandidatePair> out;
  for (const Json &j : ReadJsonLines(path)) out.push_back(CandidateFromJson(j));
  return out;
}

}  // namespace paramine

#endif  // PARAMINE_CANDIDATE_HPP_
