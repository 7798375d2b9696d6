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

#ifndef PARAMINE_PIPELINE_STAGES_HPP_
#define PARAMINE_PIPELINE_STAGES_HPP_

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "paramine/annotation/http.hpp"
#include "paramine/inter.hpp"
#include "paramine/intra.hpp"
#include "paramine/pipeline/config.hpp"
#include "paramine/quality.hpp"
#include "paramine/span/discovery.hpp"
#include "paramine/span/model.hpp"
#include "paramine/stats.hpp"
#include "paramine/synth.hpp"

namespace paramine::pipeline {

// A declared upstream file is absent. Usage-level failure (exit 2).
class MissingArtifact : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Another process holds the output directory.
class LockError : public Error {
 public:
  using Error::Error;
};

class OutputLock {
 public:
  explicit OutputLock(const fs::path &output_dir) {
    fs::create_directories(output_dir);
    path_ = output_dir / ".paramine.lock";
    fd_ = ::open(path_.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) throw Error("cannot open lock file " + path_.string());
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
      ::close(fd_);
      throw LockError("output directory " + output_dir.string() +
                      " is locked by another paramine process");
    }
  }
  OutputLock(const OutputLock &) = delete;
  OutputLock &operator=(const OutputLock &) = delete;
  ~OutputLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }

 private:
  fs::path path_;
  int fd_ = -1;
};

// Lazily built encoder, cache and embedder shared by the stages of one run.
class StageContext {
 public:
  explicit StageContext(const PipelineConfig &cfg) : cfg_(cfg) {}
  ~StageContext() {
    try {
      FlushCache();
    } catch (const std::exception &e) {
      PARAMINE_LOG(Warning) << "embedding cache not saved: " << e.what();
    }
    if (embedder_) {
      const EmbedStats &s = embedder_->stats();
      PARAMINE_LOG(Info) << "embeddings: " << s.cache_hits << " cache hits, " << s.encoded
                         << " encoded, " << s.truncated << " truncated";
    }
  }

  const PipelineConfig &cfg() const { return cfg_; }
  fs::path Out(const std::string &rel) const { return cfg_.paths.output_dir / rel; }

  const Encoder &encoder() {
    if (!encoder_) encoder_ = MakeEncoder(cfg_.encoder);
    return *encoder_;
  }

  Embedder &embedder() {
    if (!embedder_) {
      if (!cfg_.paths.cache.empty() && !cache_) {
        fs::create_directories(cfg_.paths.cache.parent_path());
        cache_ = std::make_unique<EmbeddingCache>(cfg_.paths.cache);
      }
      embedder_ = std::make_unique<Embedder>(encoder(), cfg_.embed, cache_.get());
    }
    return *embedder_;
  }

  void FlushCache() {
    if (cache_) cache_->Flush();
  }

  // The ingested corpus, reloaded from the ingest artifacts.
  const Corpus &corpus() {
    if (!corpus_) {
      corpus_ = std::make_unique<Corpus>();
      for (const Json &j : ReadJsonLines(Out("ingest/sentences.jsonl"))) {
        corpus_->Add(SentenceFromJson(j));
      }
      for (const Json &j : ReadJsonLines(Out("ingest/papers.jsonl"))) {
        corpus_->SetMeta(PaperMetaFromJson(j));
      }
    }
    return *corpus_;
  }

 private:
  const PipelineConfig &cfg_;
  std::unique_ptr<Encoder> encoder_;
  std::unique_ptr<EmbeddingCache> cache_;
  std::unique_ptr<Embedder> embedder_;
  std::unique_ptr<Corpus> corpus_;
};

struct StageInput {
  // Manifest key: output-relative path, or "paths.<key>" for external files.
  std::string key;
  fs::path path;
  // Stage that produces it; empty for external inputs.
  std::string producer;
};

struct StageDef {
  std::string name;
  std::vector<std::string> config_sections;
  std::function<std::vector<StageInput>(const PipelineConfig &)> inputs;
  std::vector<std::string> outputs;
  std::function<Json(StageContext &)> run;
  // Runs every time and writes no manifest.
  bool always_run = false;
};

struct StageOutcome {
  std::string stage;
  bool skipped = false;
  Json counts = Json::object();
};

namespace detail {

inline StageInput Internal(const PipelineConfig &cfg, const std::string &rel,
                           const std::string &producer) {
  return {rel, cfg.paths.output_dir / rel, producer};
}

inline std::vector<StageInput> IngestOutputs(const PipelineConfig &cfg) {
  return {Internal(cfg, "ingest/sentences.jsonl", "ingest"),
          Internal(cfg, "ingest/papers.jsonl", "ingest")};
}

inline std::vector<TextPair> ToTextPairs(const std::vector<FinalRecord> &records) {
  std::vector<TextPair> out;
  out.reserve(records.size());
  for (const auto &r : records) out.push_back({r.sentence_a, r.sentence_b});
  return out;
}

inline std::vector<SeedPair> ReadSeedPairs(const fs::path &path) {
  std::vector<SeedPair> out;
  for (const Json &j : ReadJsonLines(path)) {
    SeedPair p;
    p.text_a = j.contains("text_a") ? j.at("text_a").get<std::string>()
                                    : j.at("sentence_a").get<std::string>();
    p.text_b = j.contains("text_b") ? j.at("text_b").get<std::string>()
                                    : j.at("sentence_b").get<std::string>();
    p.id_a = j.value("id_a", "seed" + std::to_string(out.size()) + "a");
    p.id_b = j.value("id_b", "seed" + std::to_string(out.size()) + "b");
    out.push_back(std::move(p));
  }
  return out;
}

inline Json RunIngest(StageContext &ctx) {
  const PipelineConfig &cfg = ctx.cfg();
  LoadedCorpus loaded = LoadCorpus(cfg.paths.corpus, cfg.source, cfg.corpus);
  Json counts{{"records", loaded.report.records},
              {"loaded", loaded.report.loaded},
              {"skipped", loaded.report.skipped}};
  if (!cfg.paths.metadata.empty()) {
    LoadReport meta = LoadMetadata(cfg.paths.metadata, loaded.corpus);
    counts["metadata_loaded"] = meta.loaded;
    counts["metadata_skipped"] = meta.skipped;
  }
  const Corpus &corpus = loaded.corpus;
  std::vector<Json> sentences;
  std::map<std::string, size_t> per_section;
  size_t eligible = 0;
  for (const Sentence &s : corpus.sentences()) {
    sentences.push_back(SentenceToJson(s));
    ++per_section[SectionName(s.section)];
    if (s.eligible) ++eligible;
  }
  std::vector<Json> papers;
  for (const std::string &id : corpus.paper_order()) papers.push_back(PaperMetaToJson(corpus.Meta(id)));
  fs::create_directories(ctx.Out("ingest"));
  AtomicWriteFile(ctx.Out("ingest/sentences.jsonl"), ToJsonLines(sentences));
  AtomicWriteFile(ctx.Out("ingest/papers.jsonl"), ToJsonLines(papers));
  counts["papers"] = papers.size();
  counts["eligible"] = eligible;
  counts["sections"] = per_section;
  return counts;
}

inline Json RunEmbed(StageContext &ctx) {
  Embedder &embedder = ctx.embedder();
  std::vector<Sentence> todo;
  for (const Sentence &s : ctx.corpus().sentences()) {
    if (s.eligible) todo.push_back(s);
  }
  const size_t batch = ctx.cfg().embed.batch_size;
  size_t dim = 0;
  for (size_t b = 0; b < todo.size(); b += batch) {
    const size_t e = std::min(todo.size(), b + batch);
    auto vecs = embedder.EmbedBatch(std::span<const Sentence>(todo.data() + b, e - b));
    if (!vecs.empty()) dim = vecs.front().vector.size();
  }
  ctx.FlushCache();
  const Json summary{{"encoder_tag", embedder.encoder_tag()},
                     {"dim", dim},
                     {"sentences", todo.size()}};
  fs::create_directories(ctx.Out("embed"));
  AtomicWriteFile(ctx.Out("embed/summary.json"), summary.dump(2) + "\n");
  return Json{{"embedded", todo.size()}, {"dim", dim}};
}

inline Json RunIntra(StageContext &ctx) {
  const PipelineConfig &cfg = ctx.cfg();
  IntraOptions opts;
  opts.threshold = cfg.embed.similarity_threshold;
  opts.below_floor = cfg.HasChannel(Channel::kPdbertPartial) ? cfg.discovery_min_similarity : -1.0;
  IntraResult r = ExtractIntraCorpus(ctx.corpus(), ctx.embedder(), opts);
  fs::create_directories(ctx.Out("intra"));
  WriteCandidates(ctx.Out("intra/candidates.jsonl"), r.pairs);
  WriteCandidates(ctx.Out("intra/below_threshold.jsonl"), r.below_threshold);
  return Json{{ChannelName(Channel::kIntraSectionSim), r.pairs.size()},
              {"below_threshold", r.below_threshold.size()}};
}

inline Json RunPseudo(StageContext &ctx) {
  const PipelineConfig &cfg = ctx.cfg();
  std::vector<SeedPair> seeds;
  std::string seed_source;
  if (!cfg.paths.seed_pairs.empty()) {
    seeds = ReadSeedPairs(cfg.paths.seed_pairs);
    seed_source = "file";
  } else {
    seeds = synth::Generator(cfg.DerivedSeed("seed-pairs")).SeedPairs(cfg.seed_pair_count);
    seed_source = "synthetic";
  }
  std::vector<PoolSentence> pool;
  for (const Sentence &s : ctx.corpus().sentences()) {
    if (s.eligible) pool.push_back({s.sentence_id, s.text});
  }
  Rng rng(cfg.DerivedSeed("pdbert-pseudo"));
  std::vector<PseudoExample> data = BuildPseudoDataset(seeds, pool, cfg.span, rng, cfg.pseudo_passes);
  std::vector<Json> records;
  size_t answerable = 0;
  for (const PseudoExample &ex : data) {
    records.push_back(PseudoExampleToJson(ex));
    if (ex.has_answer) ++answerable;
  }
  fs::create_directories(ctx.Out("pdbert"));
  AtomicWriteFile(ctx.Out("pdbert/pseudo.jsonl"), ToJsonLines(records));
  return Json{{"seed_pairs", seeds.size()},
              {"seed_source", seed_source},
              {"pool", pool.size()},
              {"examples", data.size()},
              {"has_answer", answerable}};
}

inline Json RunTrain(StageContext &ctx) {
  const PipelineConfig &cfg = ctx.cfg();
  std::vector<PseudoExample> data;
  for (const Json &j : ReadJsonLines(ctx.Out("pdbert/pseudo.jsonl"))) {
    data.push_back(PseudoExampleFromJson(j));
  }
  SpanFeaturizer featurizer(ctx.encoder(), cfg.span.feature_layer);
  TrainedSpanModel trained = TrainSpanModel(data, featurizer, cfg.span);
  SaveSpanCheckpoint(ctx.Out("pdbert/model"), trained.model, trained.report);
  PARAMINE_LOG(Info) << "span model held-out exact-span accuracy "
                     << trained.report.exact_span_accuracy << ", no-answer accuracy "
                     << trained.report.no_answer_accuracy;
  return TrainReportToJson(trained.report);
}

inline Json RunDiscover(StageContext &ctx) {
  const PipelineConfig &cfg = ctx.cfg();
  SpanModel model = LoadSpanCheckpoint(ctx.Out("pdbert/model"));
  SpanFeaturizer featurizer(ctx.encoder(), model.config().feature_layer);
  SpanDiscoverer discoverer(model, featurizer);
  DiscoverReport report;
  std::vector<CandidatePair> out =
      DiscoverPartial(ReadCandidates(ctx.Out("intra/below_threshold.jsonl")), discoverer,
                      ctx.embedder(), cfg.embed.similarity_threshold, &report);
  out = DedupByPairId(std::move(out));
  WriteCandidates(ctx.Out("pdbert/candidates.jsonl"), out);
  Json counts = DiscoverReportToJson(report);
  counts[ChannelName(Channel::kPdbertPartial)] = out.size();
  return counts;
}

inline Json RunDefinitions(StageContext &ctx) {
  const PipelineConfig &cfg = ctx.cfg();
  const PatternLibrary library =
      cfg.paths.patterns.empty() ? PatternLibrary::Defaults() : PatternLibrary::FromFile(cfg.paths.patterns);
  std::vector<DefinitionRecord> records = ExtractDefinitions(ctx.corpus(), library);
  std::vector<Json> lines;
  for (const auto &r : records) lines.push_back(DefinitionToJson(r));
  std::vector<CandidatePair> pairs = PairDefinitions(records, ctx.embedder(), cfg.definition_threshold);
  fs::create_directories(ctx.Out("definitions"));
  AtomicWriteFile(ctx.Out("definitions/records.jsonl"), ToJsonLines(lines));
  WriteCandidates(ctx.Out("definitions/candidates.jsonl"), pairs);
  return Json{{"definition_sentences", records.size()},
              {ChannelName(Channel::kDefinition), pairs.size()}};
}

inline Json RunCitations(StageContext &ctx) {
  const PipelineConfig &cfg = ctx.cfg();
  LoadedEdges edges = LoadCitationEdges(cfg.paths.citations, ctx.corpus());
  std::vector<CitationGroup> groups =
      BuildCitationGroups(edges.edges, cfg.citation_cap, cfg.DerivedSeed("citations"));
  std::vector<CandidatePair> pairs = PairCitations(groups, ctx.embedder(), cfg.citation_threshold);
  fs::create_directories(ctx.Out("citations"));
  WriteCandidates(ctx.Out("citations/candidates.jsonl"), pairs);
  return Json{{"edges", edges.edges.size()},
              {"edges_skipped", edges.report.records - edges.report.loaded},
              {"groups", groups.size()},
              {ChannelName(Channel::kCitation), pairs.size()}};
}

inline std::string CandidateFile(Channel c) {
  switch (c) {
    case Channel::kIntraSectionSim: return "intra/candidates.jsonl";
    case Channel::kPdbertPartial: return "pdbert/candidates.jsonl";
    case Channel::kDefinition: return "definitions/candidates.jsonl";
    case Channel::kCitation: return "citations/candidates.jsonl";
  }
  return "";
}

inline std::string CandidateProducer(Channel c) {
  switch (c) {
    case Channel::kIntraSectionSim: return "intra";
    case Channel::kPdbertPartial: return "pdbert-discover";
    case Channel::kDefinition: return "definitions";
    case Channel::kCitation: return "citations";
  }
  return "";
}

inline Json RunFilter(StageContext &ctx) {
  const PipelineConfig &cfg = ctx.cfg();
  TokenMatchScorer scorer(ctx.encoder(), cfg.filter.scorer_layer);
  FilterConfig fcfg = cfg.filter;
  fcfg.scorer_tag = scorer.tag();
  std::vector<CandidatePair> all;
  for (Channel c : cfg.channels) {
    std::vector<CandidatePair> part = ReadCandidates(ctx.Out(CandidateFile(c)));
    std::move(part.begin(), part.end(), std::back_inserter(all));
  }
  ApplyFilters(all, fcfg, scorer);
  SortCandidates(all);
  Json per_channel = Json::object();
  std::vector<CandidatePair> kept;
  for (Channel c : cfg.channels) per_channel[ChannelName(c)] = {{"candidates", 0}, {"kept", 0}};
  for (const CandidatePair &p : all) {
    Json &slot = per_channel[ChannelName(p.channel)];
    slot["candidates"] = slot["candidates"].get<size_t>() + 1;
    if (p.kept) {
      slot["kept"] = slot["kept"].get<size_t>() + 1;
      kept.push_back(p);
    }
  }
  std::vector<CandidatePair> final_pairs = Dedup(std::move(kept));
  fs::create_directories(ctx.Out("filter"));
  fs::create_directories(ctx.Out("final"));
  WriteCandidates(ctx.Out("filter/scored.jsonl"), all);
  WriteFinalDataset(ctx.Out("final/dataset.jsonl"), final_pairs);
  return Json{{"scorer", fcfg.scorer_tag},
              {"channels", per_channel},
              {"candidates", all.size()},
              {"final", final_pairs.size()}};
}

inline Json RunStats(StageContext &ctx) {
  const PipelineConfig &cfg = ctx.cfg();
  const std::vector<FinalRecord> records = ReadFinalDataset(ctx.Out("final/dataset.jsonl"));
  std::set<std::string> candidate_ids;
  for (const Json &j : ReadJsonLines(ctx.Out("filter/scored.jsonl"))) {
    candidate_ids.insert(j.at("pair_id").get<std::string>());
  }
  StatsRow row;
  row.name = cfg.dataset_name;
  row.genre = cfg.genre;
  row.size = candidate_ids.size();
  row.gold = ComputeDatasetStats(ToTextPairs(records), cfg.bleu_mode);
  std::string text = FormatStatsTable({row});
  Json out{{"name", row.name},
           {"genre", row.genre},
           {"size", row.size},
           {"gold_size", row.gold.pair_count},
           {"len", row.gold.mean_word_len},
           {"char_len", row.gold.mean_char_len},
           {"self_bleu", row.gold.self_bleu},
           {"self_bleu_mode", cfg.bleu_mode == SelfBleuMode::kCorpus ? "corpus" : "sentence_mean"}};
  if (!cfg.paths.phenomena.empty()) {
    std::vector<PhenomenonCounts> labelled;
    for (const Json &j : ReadJsonLines(cfg.paths.phenomena)) {
      PhenomenonCounts c{};
      const Json &ph = j.contains("phenomena") ? j.at("phenomena") : j;
      for (size_t k = 0; k < kPhenomena.size(); ++k) c[k] = ph.value(kPhenomena[k], 0);
      labelled.push_back(c);
    }
    const auto means = PhenomenonMeans(labelled);
    text += "\n" + FormatPhenomenonTable({{cfg.dataset_name, means}});
    Json ph = Json::object();
    for (size_t k = 0; k < kPhenomena.size(); ++k) ph[kPhenomena[k]] = means[k];
    out["phenomena"] = ph;
  }
  fs::create_directories(ctx.Out("stats"));
  AtomicWriteFile(ctx.Out("stats/report.txt"), text);
  AtomicWriteFile(ctx.Out("stats/stats.json"), out.dump(2) + "\n");
  return out;
}

inline Json RunExport(StageContext &ctx) {
  const PipelineConfig &cfg = ctx.cfg();
  const std::vector<FinalRecord> records = ReadFinalDataset(ctx.Out("final/dataset.jsonl"));
  DatasetSplit<FinalRecord> split = SplitDataset(records, cfg.split, cfg.DerivedSeed("split"));
  fs::create_directories(ctx.Out("export"));
  AtomicWriteFile(ctx.Out("export/train.tsv"), ToTsv(split.train));
  AtomicWriteFile(ctx.Out("export/valid.tsv"), ToTsv(split.valid));
  AtomicWriteFile(ctx.Out("export/test.tsv"), ToTsv(split.test));
  return Json{{"train", split.train.size()}, {"valid", split.valid.size()}, {"test", split.test.size()}};
}

inline std::atomic<annotation::AnnotationServer *> &ActiveServer() {
  static std::atomic<annotation::AnnotationServer *> server{nullptr};
  return server;
}

inline Json RunServe(StageContext &ctx) {
  const PipelineConfig &cfg = ctx.cfg();
  fs::create_directories(ctx.Out("annotation"));
  annotation::AnnotationService svc(ctx.Out("annotation/annotation.sqlite").string(), cfg.annotation);
  for (const std::string &w : cfg.workers) svc.AddWorker(w, "worker");
  for (const std::string &a : cfg.admins) svc.AddWorker(a, "admin");
  size_t added = 0;
  const std::vector<FinalRecord> records = ReadFinalDataset(ctx.Out("final/dataset.jsonl"));
  for (const FinalRecord &r : records) {
    if (svc.AddPair(r.id, r.sentence_a, r.sentence_b)) ++added;
  }
  PARAMINE_LOG(Info) << "annotation store: " << added << " new pairs, " << records.size() << " total";
  if (!cfg.annotation_load_only) {
    annotation::AnnotationServer server(svc);
    ActiveServer().store(&server);
    PARAMINE_LOG(Info) << "serving annotation API on " << cfg.annotation_host << ":"
                       << cfg.annotation_port;
    try {
      server.Serve(cfg.annotation_host, cfg.annotation_port);
    } catch (...) {
      ActiveServer().store(nullptr);
      throw;
    }
    ActiveServer().store(nullptr);
  }
  return Json{{"pairs", records.size()}, {"new_pairs", added}, {"workers", cfg.workers.size()}};
}

}  // namespace detail

// Stages in execution order for "all". serve-annotation is excluded from it.
inline const std::vector<StageDef> &Stages() {
  using detail::Internal;
  static const std::vector<StageDef> stages = {
      {"ingest",
       {"source", "corpus"},
       [](const PipelineConfig &c) {
         std::vector<StageInput> in{{"paths.corpus", c.paths.corpus, ""}};
         if (!c.paths.metadata.empty()) in.push_back({"paths.metadata", c.paths.metadata, ""});
         return in;
       },
       {"ingest/sentences.jsonl", "ingest/papers.jsonl"},
       detail::RunIngest},
      {"embed",
       {"encoder", "embed"},
       [](const PipelineConfig &c) { return detail::IngestOutputs(c); },
       {"embed/summary.json"},
       detail::RunEmbed},
      {"intra",
       {"encoder", "embed", "intra", "filter"},
       [](const PipelineConfig &c) {
         auto in = detail::IngestOutputs(c);
         in.push_back(Internal(c, "embed/summary.json", "embed"));
         return in;
       },
       {"intra/candidates.jsonl", "intra/below_threshold.jsonl"},
       detail::RunIntra},
      {"pdbert-pseudo",
       {"span"},
       [](const PipelineConfig &c) {
         auto in = detail::IngestOutputs(c);
         if (!c.paths.seed_pairs.empty()) in.push_back({"paths.seed_pairs", c.paths.seed_pairs, ""});
         return in;
       },
       {"pdbert/pseudo.jsonl"},
       detail::RunPseudo},
      {"pdbert-train",
       {"encoder", "span"},
       [](const PipelineConfig &c) {
         return std::vector<StageInput>{Internal(c, "pdbert/pseudo.jsonl", "pdbert-pseudo")};
       },
       {"pdbert/model/manifest.json", "pdbert/model/weights.json"},
       detail::RunTrain},
      {"pdbert-discover",
       {"encoder", "embed", "span"},
       [](const PipelineConfig &c) {
         return std::vector<StageInput>{
             Internal(c, "intra/below_threshold.jsonl", "intra"),
             Internal(c, "pdbert/model/manifest.json", "pdbert-train"),
             Internal(c, "pdbert/model/weights.json", "pdbert-train")};
       },
       {"pdbert/candidates.jsonl"},
       detail::RunDiscover},
      {"definitions",
       {"encoder", "embed", "inter"},
       [](const PipelineConfig &c) {
         auto in = detail::IngestOutputs(c);
         in.push_back(Internal(c, "embed/summary.json", "embed"));
         if (!c.paths.patterns.empty()) in.push_back({"paths.patterns", c.paths.patterns, ""});
         return in;
       },
       {"definitions/records.jsonl", "definitions/candidates.jsonl"},
       detail::RunDefinitions},
      {"citations",
       {"encoder", "embed", "inter"},
       [](const PipelineConfig &c) {
         auto in = detail::IngestOutputs(c);
         in.push_back(Internal(c, "embed/summary.json", "embed"));
         in.push_back({"paths.citations", c.paths.citations, ""});
         return in;
       },
       {"citations/candidates.jsonl"},
       detail::RunCitations},
      {"filter",
       {"encoder", "filter"},
       [](const PipelineConfig &c) {
         std::vector<StageInput> in;
         for (Channel ch : c.channels) {
           in.push_back(Internal(c, detail::CandidateFile(ch), detail::CandidateProducer(ch)));
         }
         return in;
       },
       {"filter/scored.jsonl", "final/dataset.jsonl"},
       detail::RunFilter},
      {"stats",
       {"stats"},
       [](const PipelineConfig &c) {
         std::vector<StageInput> in{Internal(c, "final/dataset.jsonl", "filter"),
                                    Internal(c, "filter/scored.jsonl", "filter")};
         if (!c.paths.phenomena.empty()) in.push_back({"paths.phenomena", c.paths.phenomena, ""});
         return in;
       },
       {"stats/report.txt", "stats/stats.json"},
       detail::RunStats},
      {"export",
       {"split"},
       [](const PipelineConfig &c) {
         return std::vector<StageInput>{Internal(c, "final/dataset.jsonl", "filter")};
       },
       {"export/train.tsv", "export/valid.tsv", "export/test.tsv"},
       detail::RunExport},
      {"serve-annotation",
       {"annotation"},
       [](const PipelineConfig &c) {
         return std::vector<StageInput>{Internal(c, "final/dataset.jsonl", "filter")};
       },
       {},
       detail::RunServe,
       true},
  };
  return stages;
}

inline const StageDef *FindStage(std::string_view name) {
  for (const StageDef &s : Stages()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

// Stages "all" runs for this config; channel stages follow filter.channels.
inline std::vector<std::string> AllStages(const PipelineConfig &cfg) {
  std::vector<std::string> out;
  for (const StageDef &s : Stages()) {
    if (s.always_run) continue;
    if ((s.name == "pdbert-pseudo" || s.name == "pdbert-train" || s.name == "pdbert-discover") &&
        !cfg.HasChannel(Channel::kPdbertPartial)) {
      continue;
    }
    if (s.name == "definitions" && !cfg.HasChannel(Channel::kDefinition)) continue;
    if (s.name == "citations" && !cfg.HasChannel(Channel::kCitation)) continue;
    out.push_back(s.name);
  }
  return out;
}

inline fs::path ManifestPath(const PipelineConfig &cfg, const std::string &stage) {
  return cfg.paths.output_dir / "manifests" / (stage + ".json");
}

// Runs one stage unless its manifest shows identical inputs, config and
// outputs. Caller holds the output lock.
inline StageOutcome RunStage(const StageDef &stage, StageContext &ctx) {
  const PipelineConfig &cfg = ctx.cfg();
  Json inputs = Json::object();
  for (const StageInput &in : stage.inputs(cfg)) {
    if (in.path.empty()) {
      throw MissingArtifact("stage " + stage.name + " needs " + in.key + " to be configured");
    }
    if (!fs::exists(in.path)) {
      std::string msg = "stage " + stage.name + " is missing " + in.path.string();
      if (!in.producer.empty()) msg += " (run stage " + in.producer + " first)";
      throw MissingArtifact(msg);
    }
    inputs[in.key] = HashFileContent(in.path);
  }
  const std::string config_hash = cfg.SectionHash(stage.config_sections);
  const fs::path manifest_path = ManifestPath(cfg, stage.name);

  auto output_hashes = [&]() -> std::optional<Json> {
    Json out = Json::object();
    for (const std::string &rel : stage.outputs) {
      const fs::path p = cfg.paths.output_dir / rel;
      if (!fs::exists(p)) return std::nullopt;
      out[rel] = HashFileContent(p);
    }
    return out;
  };

  StageOutcome outcome;
  outcome.stage = stage.name;
  if (!stage.always_run && fs::exists(manifest_path)) {
    try {
      const Json old = Json::parse(ReadFile(manifest_path));
      const auto current = output_hashes();
      if (old.at("config_hash") == config_hash && old.at("inputs") == inputs && current &&
          old.at("outputs") == *current) {
        outcome.skipped = true;
        outcome.counts = old.at("counts");
        PARAMINE_LOG(Info) << "stage " << stage.name << ": up to date";
        return outcome;
      }
    } catch (const Json::exception &) {
      PARAMINE_LOG(Warning) << "ignoring unreadable manifest " << manifest_path.string();
    }
  }

  PARAMINE_LOG(Info) << "stage " << stage.name << ": running";
  outcome.counts = stage.run(ctx);
  ctx.FlushCache();
  if (stage.always_run) return outcome;
  const auto outputs = output_hashes();
  if (!outputs) throw Error("stage " + stage.name + " did not write all declared outputs");
  const Json manifest{{"stage", stage.name},
                      {"config_hash", config_hash},
                      {"inputs", inputs},
                      {"outputs", *outputs},
                      {"counts", outcome.counts}};
  fs::create_directories(manifest_path.parent_path());
  AtomicWriteFile(manifest_path, manifest.dump(2) + "\n");
  PARAMINE_LOG(Info) << "stage " << stage.name << ": " << outcome.counts.dump();
  return outcome;
}

// Runs a named stage, or every stage for "all", under the output lock.
inline std::vector<StageOutcome> RunPipeline(const std::string &name, const PipelineConfig &cfg) {
  std::vector<std::string> names;
  if (name == "all") {
    names = AllStages(cfg);
  } else if (FindStage(name)) {
    names.push_back(name);
  } else {
    throw ConfigError("unknown stage: " + name);
  }
  OutputLock lock(cfg.paths.output_dir);
  StageContext ctx(cfg);
  std::vector<StageOutcome> out;
  for (const std::string &n : names) out.push_back(RunStage(*FindStage(n), ctx));
  return out;
}

}  // namespace paramine::pipeline

#endif  // PARAMINE_PIPELINE_STAGES_HPP_
