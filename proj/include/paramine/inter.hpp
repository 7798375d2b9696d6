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

#ifndef PARAMINE_INTER_HPP_
#define PARAMINE_INTER_HPP_

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <boost/regex.hpp>

#include "paramine/candidate.hpp"
#include "paramine/corpus.hpp"
#include "paramine/embedder.hpp"
#include "paramine/intra.hpp"
#include "paramine/util/rng.hpp"

namespace paramine {

struct DefinitionPattern {
  std::string pattern_id;
  std::string expression;  // must contain a named capture (?<term>...)
  boost::regex regex;
};

// Ordered set of compiled definition patterns.
class PatternLibrary {
 public:
  PatternLibrary() = default;

  void Add(std::string id, std::string expression) {
    if (expression.find("(?<term>") == std::string::npos) {
      throw ConfigError("definition pattern '" + id + "' lacks a (?<term>...) capture");
    }
    DefinitionPattern p;
    p.pattern_id = std::move(id);
    p.expression = std::move(expression);
    try {
      p.regex = boost::regex(p.expression, boost::regex::perl | boost::regex::icase);
    } catch (const boost::regex_error &e) {
      throw ConfigError("definition pattern '" + p.pattern_id + "' does not compile: " +
                        e.what());
    }
    patterns_.push_back(std::move(p));
  }

  const std::vector<DefinitionPattern> &patterns() const { return patterns_; }

  static PatternLibrary Defaults() {
    // A term is a short noun phrase, optionally followed by a parenthesized
    // abbreviation.
    const std::string term =
        R"((?<term>(?:the |an |a )?[a-z][a-z0-9\-]*(?: [a-z0-9\-]+){0,5}(?: \([a-z0-9\-]+\))?))";
    PatternLibrary lib;
    lib.Add("is-the-task-of", "^" + term + R"( is the task of \S.*$)");
    lib.Add("is-defined-as", "^" + term + R"( is defined as \S.*$)");
    lib.Add("refers-to", "^" + term + R"( refers to \S.*$)");
    lib.Add("is-a-task-of", "^" + term + R"( is a task of \S.*$)");
    lib.Add("is-known-as", "^the process of .+, is known as " + term + R"([.!]?$)");
    lib.Add("we-define", "^we define " + term + R"( as \S.*$)");
    return lib;
  }

  // Pattern file: one {pattern_id, pattern} record per line.
  static PatternLibrary FromFile(const fs::path &path) {
    PatternLibrary lib;
    for (const Json &j : ReadJsonLines(path)) {
      lib.Add(j.at("pattern_id").get<std::string>(), j.at("pattern").get<std::string>());
    }
    if (lib.patterns_.empty()) throw ConfigError("empty pattern library: " + path.string());
    return lib;
  }

 private:
  std::vector<DefinitionPattern> patterns_;
};

struct DefinitionRecord {
  std::string term;
  std::string abbreviation;
  Sentence sentence;
  std::string subject_area;
  std::string pattern_id;
};

struct NormalizedTerm {
  std::string term;
  std::string abbreviation;
};

// Strips a leading article and a trailing parenthesized abbreviation:
// "word sense disambiguation (wsd)" -> {"word sense disambiguation", "wsd"}.
inline NormalizedTerm NormalizeTerm(std::string_view raw) {
  std::string t = NormalizeSentence(raw);
  NormalizedTerm out;
  if (!t.empty() && t.back() == ')') {
    const size_t open = t.rfind('(');
    if (open != std::string::npos && open > 0) {
      out.abbreviation = std::string(Trim(std::string_view(t).substr(open + 1, t.size() - open - 2)));
      t = std::string(Trim(std::string_view(t).substr(0, open)));
    }
  }
  for (std::string_view article : {"the ", "an ", "a "}) {
    if (t.rfind(article, 0) == 0 && t.size() > article.size()) {
      t = t.substr(article.size());
      break;
    }
  }
  out.term = t;
  return out;
}

inline bool PlausibleTerm(const std::string &term) {
  if (term.empty()) return false;
  for (const std::string &w : SplitWhitespace(term)) {
    if (w == "that" || w == "which" || w == "we" || w == "is" || w == "are" || w == "this" ||
        w == "it" || w == "was" || w == "were") {
      return false;
    }
  }
  return true;
}

// One record per (sentence, matched term). A sentence matched by several
// patterns for the same term yields one record (first pattern wins).
inline std::vector<DefinitionRecord> ExtractDefinitions(const Corpus &corpus,
                                                        const PatternLibrary &library) {
  std::vector<DefinitionRecord> out;
  for (const Sentence &s : corpus.sentences()) {
    if (!s.eligible) continue;
    std::set<std::string> seen;
    for (const DefinitionPattern &p : library.patterns()) {
      boost::smatch m;
      if (!boost::regex_match(s.text, m, p.regex)) continue;
      const NormalizedTerm t = NormalizeTerm(m["term"].str());
      if (!PlausibleTerm(t.term) || s.text.find(t.term) == std::string::npos) continue;
      if (!seen.insert(t.term).second) continue;
      DefinitionRecord r;
      r.term = t.term;
      r.abbreviation = t.abbreviation;
      r.sentence = s;
      auto it = corpus.papers().find(s.paper_id);
      r.subject_area = it == corpus.papers().end() ? "unknown" : it->second.subject_area;
      r.pattern_id = p.pattern_id;
      out.push_back(std::move(r));
    }
  }
  return out;
}

inline Json DefinitionToJson(const DefinitionRecord &r) {
  return Json{{"term", r.term},
              {"abbreviation", r.abbreviation},
              {"subject_area", r.subject_area},
              {"pattern_id", r.pattern_id},
              {"sentence", SentenceToJson(r.sentence)}};
}

// Cross-paper pairs within each (term, subject_area) group that pass the
// cosine gate.
inline std::vector<CandidatePair> PairDefinitions(const std::vector<DefinitionRecord> &records,
                                                  Embedder &embedder, double threshold) {
  std::map<std::pair<std::string, std::string>, std::vector<const DefinitionRecord *>> groups;
  for (const auto &r : records) groups[{r.term, r.subject_area}].push_back(&r);
  std::vector<CandidatePair> out;
  for (const auto &[key, members] : groups) {
    if (members.size() < 2) continue;
    std::vector<std::vector<float>> vecs;
    for (const auto *m : members) vecs.push_back(embedder.EmbedText(m->sentence.text));
    for (size_t i = 0; i < members.size(); ++i) {
      for (size_t j = i + 1; j < members.size(); ++j) {
        const Sentence &a = members[i]->sentence, &b = members[j]->sentence;
        if (a.paper_id == b.paper_id || a.text == b.text) continue;
        const double sim = Cosine(vecs[i], vecs[j]);
        if (sim > threshold) out.push_back(MakeCandidate(a, b, Channel::kDefinition, sim));
      }
    }
  }
  return DedupByPairId(std::move(out));
}

struct CitationGroup {
  std::string cited_paper_id;
  std::vector<Sentence> members;
};

// One group per cited paper cited from at least two distinct citing papers.
// Groups above `cap` members are sampled down (deterministically from
// `seed`), keeping the original member order.
inline std::vector<CitationGroup> BuildCitationGroups(const std::vector<CitationEdge> &edges,
                                                      size_t cap = 200, uint64_t seed = 0) {
  std::map<std::string, CitationGroup> by_cited;
  std::map<std::string, std::set<std::string>> member_ids;
  for (const CitationEdge &e : edges) {
    CitationGroup &g = by_cited[e.cited_paper_id];
    g.cited_paper_id = e.cited_paper_id;
    if (member_ids[e.cited_paper_id].insert(e.citing_sentence.sentence_id).second) {
      g.members.push_back(e.citing_sentence);
    }
  }
  std::vector<CitationGroup> out;
  for (auto &[cited, g] : by_cited) {
    std::set<std::string> papers;
    for (const Sentence &s : g.members) papers.insert(s.paper_id);
    if (papers.size() < 2) continue;
    if (cap > 0 && g.members.size() > cap) {
      std::vector<size_t> idx(g.members.size());
      for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      Rng rng(seed ^ Fnv1a64(cited));
      rng.Shuffle(idx);
      idx.resize(cap);
      std::sort(idx.begin(), idx.end());
      std::vector<Sentence> kept;
      for (size_t i : idx) kept.push_back(g.members[i]);
      g.members = std::move(kept);
    }
    out.push_back(std::move(g));
  }
  return out;
}

// Pairs of citing sentences from different citing papers within a group
// that pass the cosine gate.
inline std::vector<CandidatePair> PairCitations(const std::vector<CitationGroup> &groups,
                                                Embedder &embedder, double threshold) {
  std::vector<CandidatePair> out;
  for (const CitationGroup &g : groups) {
    std::vector<std::vector<float>> vecs;
    for (const Sentence &s : g.members) vecs.push_back(embedder.EmbedText(s.text));
    for (size_t i = 0; i < g.members.size(); ++i) {
      for (size_t j = i + 1; j < g.members.size(); ++j) {
        const Sentence &a = g.members[i], &b = g.members[j];
        if (a.paper_id == b.paper_id || a.text == b.text) continue;
        const double sim = Cosine(vecs[i], vecs[j]);
        if (sim > threshold) out.push_back(MakeCandidate(a, b, Channel::kCitation, sim));
      }
    }
  }
  return DedupByPairId(std::move(out));
}

}  // namespace paramine

#endif  // PARAMINE_INTER_HPP_
