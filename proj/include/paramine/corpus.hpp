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

#ifndef PARAMINE_CORPUS_HPP_
#define PARAMINE_CORPUS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "paramine/error.hpp"
#include "paramine/util/io.hpp"
#include "paramine/util/log.hpp"
#include "paramine/util/text.hpp"

namespace paramine {

// The six sections that take part in intra-paper pairing, plus Other for
// everything else (method, data, results, ...).
enum class Section {
  kAbstract,
  kIntroduction,
  kBackground,
  kDiscussion,
  kPreamble,
  kConclusion,
  kOther
};

inline constexpr Section kTargetSections[] = {
    Section::kAbstract,   Section::kIntroduction, Section::kBackground,
    Section::kDiscussion, Section::kPreamble,     Section::kConclusion};

inline bool IsTargetSection(Section s) { return s != Section::kOther; }

inline const char *SectionName(Section s) {
  switch (s) {
    case Section::kAbstract: return "Abstract";
    case Section::kIntroduction: return "Introduction";
    case Section::kBackground: return "Background";
    case Section::kDiscussion: return "Discussion";
    case Section::kPreamble: return "Preamble";
    case Section::kConclusion: return "Conclusion";
    case Section::kOther: return "Other";
  }
  return "Other";
}

inline std::optional<Section> SectionFromName(std::string_view name) {
  for (Section s : kTargetSections) {
    if (name == SectionName(s)) return s;
  }
  if (name == "Other") return Section::kOther;
  return std::nullopt;
}

enum class Source { kAcl, kArxiv, kOther };

inline const char *SourceName(Source s) {
  switch (s) {
    case Source::kAcl: return "ACL";
    case Source::kArxiv: return "ARXIV";
    case Source::kOther: return "OTHER";
  }
  return "OTHER";
}

inline Source SourceFromName(std::string_view name) {
  std::string upper(name);
  for (char &c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "ACL") return Source::kAcl;
  if (upper == "ARXIV") return Source::kArxiv;
  return Source::kOther;
}

// Case-insensitive section label lookup. Labels not in the table map to
// Section::kOther.
class SectionAliases {
 public:
  SectionAliases() {
    for (Section s : kTargetSections) {
      std::string name = SectionName(s);
      for (char &c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      table_[name] = s;
    }
    table_["conclusions"] = Section::kConclusion;
    table_["concluding remarks"] = Section::kConclusion;
    table_["related work"] = Section::kBackground;
    table_["related works"] = Section::kBackground;
    table_["intro"] = Section::kIntroduction;
  }

  void Add(std::string_view label, Section section) {
    table_[NormalizeLabel(label)] = section;
  }

  Section Resolve(std::string_view label) const {
    auto it = table_.find(NormalizeLabel(label));
    return it == table_.end() ? Section::kOther : it->second;
  }

  static std::string NormalizeLabel(std::string_view label) {
    return NormalizeSentence(label);
  }

 private:
  std::map<std::string, Section, std::less<>> table_;
};

struct Sentence {
  std::string sentence_id;
  std::string paper_id;
  Section section = Section::kOther;
  // Normalized raw section label from the source file ("method", "results").
  std::string section_label;
  uint32_t index_in_section = 0;
  std::string text;
  uint32_t token_count = 0;
  uint32_t char_count = 0;
  // False when the sentence is outside the configured length bounds; such
  // sentences are kept in the corpus but never paired.
  bool eligible = true;

  bool operator==(const Sentence &) const = default;
};

// Number of Unicode code points in a UTF-8 string.
inline uint32_t CountChars(std::string_view utf8) {
  uint32_t n = 0;
  for (unsigned char c : utf8) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

struct PaperMeta {
  std::string paper_id;
  std::string title;
  std::string subject_area = "unknown";
  Source source = Source::kOther;

  bool operator==(const PaperMeta &) const = default;
};

struct CitationEdge {
  std::string citing_paper_id;
  std::string cited_paper_id;
  Sentence citing_sentence;

  bool operator==(const CitationEdge &) const = default;
};

struct RecordError {
  size_t line = 0;
  std::string message;
};

struct LoadReport {
  size_t records = 0;
  size_t loaded = 0;
  size_t skipped = 0;
  std::vector<RecordError> errors;
};

struct CorpusOptions {
  uint32_t min_tokens = 4;
  uint32_t max_tokens = 120;
  SectionAliases aliases;
};

inline Sentence MakeSentence(std::string sentence_id, std::string paper_id,
                             Section section, std::string section_label,
                             uint32_t index, std::string normalized_text,
                             const CorpusOptions &opts = {}) {
  Sentence s;
  s.sentence_id = std::move(sentence_id);
  s.paper_id = std::move(paper_id);
  s.section = section;
  s.section_label = std::move(section_label);
  s.index_in_section = index;
  s.text = std::move(normalized_text);
  s.token_count = static_cast<uint32_t>(CountTokens(s.text));
  s.char_count = CountChars(s.text);
  s.eligible = s.token_count >= opts.min_tokens && s.token_count <= opts.max_tokens;
  return s;
}

// Sentence-segmented corpus. Immutable once loaded; sentences keep file order.
class Corpus {
 public:
  Corpus() = default;

  const std::vector<Sentence> &sentences() const { return sentences_; }
  const std::map<std::string, PaperMeta> &papers() const { return papers_; }
  const std::vector<std::string> &paper_order() const { return paper_order_; }

  const Sentence *FindSentence(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    return it == by_id_.end() ? nullptr : &sentences_[it->second];
  }

  const PaperMeta &Meta(const std::string &paper_id) const {
    auto it = papers_.find(paper_id);
    if (it == papers_.end()) throw DataError("unknown paper: " + paper_id);
    return it->second;
  }

  std::vector<Sentence> SentencesOf(const std::string &paper_id) const {
    std::vector<Sentence> out;
    auto it = by_paper_.find(paper_id);
    if (it == by_paper_.end()) return out;
    for (size_t i : it->second) out.push_back(sentences_[i]);
    return out;
  }

  // Returns false (and leaves the corpus unchanged) on a duplicate sentence
  // id or duplicate (paper, section label, index) position.
  bool Add(Sentence s, Source source = Source::kOther) {
    const std::string key = s.paper_id + '\x1f' + s.section_label + '\x1f' +
                            std::to_string(s.index_in_section);
    if (positions_.count(key) || by_id_.count(s.sentence_id)) return false;
    positions_.insert(key);
    if (!papers_.count(s.paper_id)) {
      PaperMeta meta;
      meta.paper_id = s.paper_id;
      meta.source = source;
      papers_.emplace(s.paper_id, meta);
      paper_order_.push_back(s.paper_id);
    }
    by_id_.emplace(s.sentence_id, sentences_.size());
    by_paper_[s.paper_id].push_back(sentences_.size());
    sentences_.push_back(std::move(s));
    return true;
  }

  void SetMeta(PaperMeta meta) {
    if (meta.subject_area.empty()) meta.subject_area = "unknown";
    if (!papers_.count(meta.paper_id)) paper_order_.push_back(meta.paper_id);
    papers_[meta.paper_id] = std::move(meta);
  }

 private:
  std::vector<Sentence> sentences_;
  std::unordered_map<std::string, size_t> by_id_;
  std::unordered_map<std::string, std::vector<size_t>> by_paper_;
  std::set<std::string> positions_;
  std::map<std::string, PaperMeta> papers_;
  std::vector<std::string> paper_order_;
};

struct LoadedCorpus {
  Corpus corpus;
  LoadReport report;
};

namespace detail {

inline std::string RequireString(const Json &rec, const char *key) {
  auto it = rec.find(key);
  if (it == rec.end() || !it->is_string()) {
    throw DataError(std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

inline std::string IdField(const Json &rec, const char *key) {
  auto it = rec.find(key);
  if (it == rec.end()) throw DataError(std::string("missing field '") + key + "'");
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<int64_t>());
  throw DataError(std::string("field '") + key + "' must be a string or integer");
}

}  // namespace detail

// Parses one corpus record. Throws DataError on malformed input; returns a
// sentence with empty text when the text normalizes to nothing.
inline Sentence ParseCorpusRecord(const Json &rec, const CorpusOptions &opts) {
  if (!rec.is_object()) throw DataError("record is not an object");
  const std::string paper_id = detail::IdField(rec, "paper_id");
  const std::string label = SectionAliases::NormalizeLabel(
      detail::RequireString(rec, "section"));
  auto idx = rec.find("index");
  if (idx == rec.end() || !idx->is_number_integer() || idx->get<int64_t>() < 0 ||
      idx->get<int64_t>() > UINT32_MAX) {
    throw DataError("field 'index' must be a non-negative integer");
  }
  const auto index = static_cast<uint32_t>(idx->get<int64_t>());
  std::string sentence_id = rec.contains("sentence_id")
                                ? detail::IdField(rec, "sentence_id")
                                : paper_id + ":" + label + ":" + std::to_string(index);
  return MakeSentence(std::move(sentence_id), paper_id, opts.aliases.Resolve(label),
                      label, index,
                      NormalizeSentence(detail::RequireString(rec, "text")), opts);
}

// Loads a line-delimited corpus file: {paper_id, section, index, text} per
// line, optional sentence_id. Bad records are reported and skipped.
inline LoadedCorpus LoadCorpus(const fs::path &path, Source source,
                               const CorpusOptions &opts = {}) {
  LoadedCorpus out;
  ForEachLine(path, [&](size_t line_no, const std::string &line) {
    if (Trim(line).empty()) return;
    ++out.report.records;
    auto skip = [&](std::string msg) {
      ++out.report.skipped;
      out.report.errors.push_back({line_no, std::move(msg)});
    };
    Json rec;
    try {
      rec = Json::parse(line);
    } catch (const Json::exception &e) {
      skip(std::string("malformed record: ") + e.what());
      return;
    }
    Sentence s;
    try {
      s = ParseCorpusRecord(rec, opts);
    } catch (const DataError &e) {
      skip(e.what());
      return;
    }
    if (s.text.empty()) {
      skip("empty text after normalization");
      return;
    }
    const std::string id = s.sentence_id;
    if (!out.corpus.Add(std::move(s), source)) {
      skip("duplicate sentence position or id: " + id);
      return;
    }
    ++out.report.loaded;
  });
  for (const auto &e : out.report.errors) {
    PARAMINE_LOG(Warning) << path.string() << ":" << e.line << ": " << e.message;
  }
  return out;
}

// Metadata records: {paper_id, title, subject_area, source}.
inline LoadReport LoadMetadata(const fs::path &path, Corpus &corpus) {
  LoadReport report;
  ForEachLine(path, [&](size_t line_no, const std::string &line) {
    if (Trim(line).empty()) return;
    ++report.records;
    try {
      const Json rec = Json::parse(line);
      PaperMeta meta;
      meta.paper_id = detail::IdField(rec, "paper_id");
      meta.title = rec.value("title", std::string());
      meta.subject_area = NormalizeSentence(rec.value("subject_area", std::string()));
      meta.source = SourceFromName(rec.value("source", std::string("OTHER")));
      corpus.SetMeta(std::move(meta));
      ++report.loaded;
    } catch (const std::exception &e) {
      ++report.skipped;
      report.errors.push_back({line_no, e.what()});
    }
  });
  return report;
}

struct EdgeLoadReport {
  size_t records = 0;
  size_t loaded = 0;
  size_t skipped_unknown_sentence = 0;
  size_t skipped_self_citation = 0;
  size_t skipped_wrong_paper = 0;
  size_t malformed = 0;
};

struct LoadedEdges {
  std::vector<CitationEdge> edges;
  EdgeLoadReport report;
};

// Citation records: {citing_paper_id, cited_paper_id, citing_sentence_id}.
// Citing sentences are resolved against `corpus`.
inline LoadedEdges LoadCitationEdges(const fs::path &path, const Corpus &corpus) {
  LoadedEdges out;
  ForEachLine(path, [&](size_t line_no, const std::string &line) {
    if (Trim(line).empty()) return;
    ++out.report.records;
    CitationEdge edge;
    std::string sid;
    try {
      const Json rec = Json::parse(line);
      edge.citing_paper_id = detail::IdField(rec, "citing_paper_id");
      edge.cited_paper_id = detail::IdField(rec, "cited_paper_id");
      sid = detail::IdField(rec, "citing_sentence_id");
    } catch (const std::exception &e) {
      ++out.report.malformed;
      PARAMINE_LOG(Warning) << path.string() << ":" << line_no << ": " << e.what();
      return;
    }
    if (edge.citing_paper_id == edge.cited_paper_id) {
      ++out.report.skipped_self_citation;
      return;
    }
    const Sentence *s = corpus.FindSentence(sid);
    if (s == nullptr) {
      ++out.report.skipped_unknown_sentence;
      return;
    }
    if (s->paper_id != edge.citing_paper_id) {
      ++out.report.skipped_wrong_paper;
      return;
    }
    edge.citing_sentence = *s;
    out.edges.push_back(std::move(edge));
    ++out.report.loaded;
  });
  if (out.report.skipped_unknown_sentence > 0) {
    PARAMINE_LOG(Warning) << path.string() << ": "
                          << out.report.skipped_unknown_sentence
                          << " edges reference unknown sentences";
  }
  return out;
}

// JSON forms used by the stage artifacts.
inline Json SentenceToJson(const Sentence &s) {
  return Json{{"sentence_id", s.sentence_id},
              {"paper_id", s.paper_id},
              {"section", SectionName(s.section)},
              {"section_label", s.section_label},
              {"index", s.index_in_section},
              {"text", s.text},
              {"token_count", s.token_count},
              {"char_count", s.char_count},
              {"eligible", s.eligible}};
}

inline Sentence SentenceFromJson(const Json &j) {
  Sentence s;
  s.sentence_id = j.at("sentence_id").get<std::string>();
  s.paper_id = j.at("paper_id").get<std::string>();
  s.section = SectionFromName(j.at("section").get<std::string>()).value_or(Section::kOther);
  s.section_label = j.value("section_label", std::string());
  s.index_in_section = j.value("index", 0u);
  s.text = j.at("text").get<std::string>();
  s.token_count = j.value("token_count", static_cast<uint32_t>(CountTokens(s.text)));
  s.char_count = j.value("char_count", CountChars(s.text));
  s.eligible = j.value("eligible", true);
  return s;
}

inline Json PaperMetaToJson(const PaperMeta &m) {
  return Json{{"paper_id", m.paper_id},
              {"title", m.title},
              {"subject_area", m.subject_area},
              {"source", SourceName(m.source)}};
}

inline PaperMeta PaperMetaFromJson(const Json &j) {
  PaperMeta m;
  m.paper_id = j.at("paper_id").get<std::string>();
  m.title = j.value("title", std::string());
  m.subject_area = j.value("subject_area", std::string("unknown"));
  m.source = SourceFromName(j.value("source", std::string("OTHER")));
  return m;
}

}  // namespace paramine

#endif  // PARAMINE_CORPUS_HPP_
