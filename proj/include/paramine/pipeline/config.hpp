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

#ifndef PARAMINE_PIPELINE_CONFIG_HPP_
#define PARAMINE_PIPELINE_CONFIG_HPP_

#include <set>
#include <string>
#include <vector>

#include "paramine/annotation/service.hpp"
#include "paramine/candidate.hpp"
#include "paramine/corpus.hpp"
#include "paramine/embedder.hpp"
#include "paramine/encoder.hpp"
#include "paramine/quality.hpp"
#include "paramine/span/model.hpp"
#include "paramine/stats.hpp"
#include "paramine/util/hash.hpp"
#include "paramine/util/io.hpp"

namespace paramine::pipeline {

struct PipelinePaths {
  fs::path corpus;
  fs::path metadata;
  fs::path citations;
  fs::path patterns;
  fs::path seed_pairs;
  fs::path cache;
  fs::path output_dir;
  fs::path phenomena;
};

struct PipelineConfig {
  // Config after --set overrides, as written by the user.
  Json raw;
  uint64_t seed = 13;
  PipelinePaths paths;
  Source source = Source::kOther;
  EncoderSpec encoder;
  CorpusOptions corpus;
  EmbedConfig embed;
  double discovery_min_similarity = 0.8;
  SpanModelConfig span;
  size_t seed_pair_count = 1500;
  size_t pseudo_passes = 2;
  FilterConfig filter;
  std::vector<Channel> channels = {Channel::kIntraSectionSim, Channel::kPdbertPartial,
                                   Channel::kDefinition, Channel::kCitation};
  size_t citation_cap = 200;
  double definition_threshold = 0.931;
  double citation_threshold = 0.931;
  SplitRatios split;
  SelfBleuMode bleu_mode = SelfBleuMode::kCorpus;
  std::string dataset_name = "paramine";
  std::string genre = "science";
  annotation::ServiceConfig annotation;
  std::string annotation_host = "127.0.0.1";
  int annotation_port = 8080;
  std::vector<std::string> workers;
  std::vector<std::string> admins;
  bool annotation_load_only = false;

  bool HasChannel(Channel c) const {
    return std::find(channels.begin(), channels.end(), c) != channels.end();
  }

  // Hash over the given top-level sections plus the seed. Paths never count.
  std::string SectionHash(const std::vector<std::string> &sections) const {
    Json sub = Json::object();
    sub["seed"] = seed;
    for (const std::string &s : sections) {
      if (raw.contains(s)) sub[s] = raw.at(s);
    }
    return HexDigest(Fnv1a64(sub.dump()));
  }

  uint64_t DerivedSeed(std::string_view purpose) const { return seed ^ Fnv1a64(purpose); }
};

namespace detail {

inline void CheckKeys(const Json &obj, const std::string &where, std::set<std::string> allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto &[key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown config key " + where + "." + key);
  }
}

inline Json Section(const Json &raw, const std::string &name, std::set<std::string> allowed) {
  if (!raw.contains(name)) return Json::object();
  const Json &s = raw.at(name);
  CheckKeys(s, name, std::move(allowed));
  return s;
}

template <typename T>
T Get(const Json &section, const std::string &where, const char *key, T fallback) {
  if (!section.contains(key)) return fallback;
  try {
    return section.at(key).get<T>();
  } catch (const Json::exception &) {
    throw ConfigError("config key " + where + "." + key + " has the wrong type");
  }
}

inline fs::path ResolvePath(const fs::path &base, const Json &paths, const char *key) {
  if (!paths.contains(key) || paths.at(key).is_null()) return {};
  if (!paths.at(key).is_string()) throw ConfigError(std::string("paths.") + key + " must be a string");
  fs::path p = paths.at(key).get<std::string>();
  if (p.empty()) return {};
  return (p.is_relative() ? base / p : p).lexically_normal();
}

}  // namespace detail

// Applies one "a.b.c=value" override. The value is parsed as JSON when it
// parses, otherwise taken as a string.
inline void ApplyOverride(Json &raw, const std::string &assignment) {
  const size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("--set expects key=value, got '" + assignment + "'");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  Json value;
  try {
    value = Json::parse(text);
  } catch (const Json::parse_error &) {
    value = text;
  }
  Json *node = &raw;
  size_t start = 0;
  while (true) {
    const size_t dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError("bad override key '" + key + "'");
    if (!node->is_object()) throw ConfigError("override '" + key + "' descends into a non-object");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    if (node->is_null()) *node = Json::object();
    start = dot + 1;
  }
}

// Relative paths resolve against `base_dir` (the config file's directory).
inline PipelineConfig ParsePipelineConfig(const Json &raw, const fs::path &base_dir) {
  using detail::Get;
  using detail::Section;
  PipelineConfig cfg;
  cfg.raw = raw;
  detail::CheckKeys(raw, "config",
                    {"seed", "paths", "source", "encoder", "corpus", "embed", "intra", "span",
                     "filter", "inter", "split", "stats", "annotation"});
  cfg.seed = Get<uint64_t>(raw, "config", "seed", cfg.seed);
  cfg.source = SourceFromName(Get<std::string>(raw, "config", "source", "OTHER"));

  const Json paths = Section(raw, "paths",
                             {"corpus", "metadata", "citations", "patterns", "seed_pairs",
                              "cache", "output_dir", "phenomena"});
  cfg.paths.corpus = detail::ResolvePath(base_dir, paths, "corpus");
  cfg.paths.metadata = detail::ResolvePath(base_dir, paths, "metadata");
  cfg.paths.citations = detail::ResolvePath(base_dir, paths, "citations");
  cfg.paths.patterns = detail::ResolvePath(base_dir, paths, "patterns");
  cfg.paths.seed_pairs = detail::ResolvePath(base_dir, paths, "seed_pairs");
  cfg.paths.cache = detail::ResolvePath(base_dir, paths, "cache");
  cfg.paths.output_dir = detail::ResolvePath(base_dir, paths, "output_dir");
  cfg.paths.phenomena = detail::ResolvePath(base_dir, paths, "phenomena");
  if (cfg.paths.output_dir.empty()) throw ConfigError("paths.output_dir is required");

  const Json enc = Section(raw, "encoder", {"name", "dim", "layers", "context_mix", "vectors"});
  cfg.encoder.name = Get<std::string>(enc, "encoder", "name", cfg.encoder.name);
  cfg.encoder.dim = Get<size_t>(enc, "encoder", "dim", cfg.encoder.dim);
  cfg.encoder.layers = Get<size_t>(enc, "encoder", "layers", cfg.encoder.layers);
  cfg.encoder.context_mix = Get<double>(enc, "encoder", "context_mix", cfg.encoder.context_mix);
  if (enc.contains("vectors")) {
    fs::path v = Get<std::string>(enc, "encoder", "vectors", "");
    cfg.encoder.vectors_path = (v.is_relative() ? base_dir / v : v).string();
  }

  const Json corpus = Section(raw, "corpus", {"min_tokens", "max_tokens", "section_aliases"});
  cfg.corpus.min_tokens = Get<uint32_t>(corpus, "corpus", "min_tokens", cfg.corpus.min_tokens);
  cfg.corpus.max_tokens = Get<uint32_t>(corpus, "corpus", "max_tokens", cfg.corpus.max_tokens);
  if (cfg.corpus.min_tokens > cfg.corpus.max_tokens) {
    throw ConfigError("corpus.min_tokens exceeds corpus.max_tokens");
  }
  if (corpus.contains("section_aliases")) {
    for (const auto &[label, target] : corpus.at("section_aliases").items()) {
      auto s = SectionFromName(target.get<std::string>());
      if (!s) throw ConfigError("section alias target must be a target section: " + label);
      cfg.corpus.aliases.Add(label, *s);
    }
  }

  const Json embed = Section(raw, "embed", {"pooling", "batch_size", "similarity_threshold"});
  cfg.embed.pooling = PoolingFromName(Get<std::string>(embed, "embed", "pooling", "mean"));
  cfg.embed.batch_size = Get<size_t>(embed, "embed", "batch_size", cfg.embed.batch_size);
  cfg.embed.similarity_threshold =
      Get<double>(embed, "embed", "similarity_threshold", cfg.embed.similarity_threshold);
  cfg.embed.Validate();

  const Json intra = Section(raw, "intra", {"discovery_min_similarity"});
  cfg.discovery_min_similarity =
      Get<double>(intra, "intra", "discovery_min_similarity", cfg.discovery_min_similarity);
  if (!(cfg.discovery_min_similarity >= -1.0 &&
        cfg.discovery_min_similarity <= cfg.embed.similarity_threshold)) {
    throw ConfigError("intra.discovery_min_similarity must lie in [-1, similarity_threshold]");
  }

  Json span = raw.value("span", Json::object());
  if (!span.is_object()) throw ConfigError("span must be an object");
  cfg.seed_pair_count = Get<size_t>(span, "span", "seed_pairs", cfg.seed_pair_count);
  cfg.pseudo_passes = Get<size_t>(span, "span", "passes", cfg.pseudo_passes);
  span.erase("seed_pairs");
  span.erase("passes");
  detail::CheckKeys(span, "span",
                    {"max_sequence_length", "learning_rate", "epochs", "batch_size",
                     "hidden_units", "p_c", "p_b", "p_d", "no_answer_mode", "both_orientations",
                     "held_out_fraction", "min_span_tokens", "feature_layer"});
  try {
    cfg.span = SpanConfigFromJson(span);
  } catch (const Json::exception &e) {
    throw ConfigError(std::string("span: ") + e.what());
  }
  cfg.span.seed = cfg.DerivedSeed("pdbert-train");
  cfg.span.Validate();
  if (cfg.pseudo_passes == 0) throw ConfigError("span.passes must be positive");

  const Json filter = Section(raw, "filter",
                              {"scorer_layer", "definition_score_min", "definition_plr_max",
                               "general_score_min", "general_plr_max", "channels"});
  cfg.filter.scorer_layer = Get<size_t>(filter, "filter", "scorer_layer", cfg.filter.scorer_layer);
  cfg.filter.definition_score_min =
      Get<double>(filter, "filter", "definition_score_min", cfg.filter.definition_score_min);
  cfg.filter.definition_plr_max =
      Get<double>(filter, "filter", "definition_plr_max", cfg.filter.definition_plr_max);
  cfg.filter.general_score_min =
      Get<double>(filter, "filter", "general_score_min", cfg.filter.general_score_min);
  cfg.filter.general_plr_max =
      Get<double>(filter, "filter", "general_plr_max", cfg.filter.general_plr_max);
  if (filter.contains("channels")) {
    cfg.channels.clear();
    for (const auto &c : filter.at("channels")) {
      try {
        cfg.channels.push_back(ChannelFromName(c.get<std::string>()));
      } catch (const Error &e) {
        throw ConfigError(std::string("filter.channels: ") + e.what());
      }
    }
  }
  cfg.filter.Validate();
  if (cfg.filter.scorer_layer > cfg.encoder.layers) {
    throw ConfigError("filter.scorer_layer exceeds encoder.layers");
  }
  if (cfg.span.feature_layer > cfg.encoder.layers) {
    throw ConfigError("span.feature_layer exceeds encoder.layers");
  }

  const Json inter =
      Section(raw, "inter", {"citation_cap", "definition_threshold", "citation_threshold"});
  cfg.citation_cap = Get<size_t>(inter, "inter", "citation_cap", cfg.citation_cap);
  cfg.definition_threshold = Get<double>(inter, "inter", "definition_threshold",
                                         cfg.embed.similarity_threshold);
  cfg.citation_threshold =
      Get<double>(inter, "inter", "citation_threshold", cfg.embed.similarity_threshold);
  for (double t : {cfg.definition_threshold, cfg.citation_threshold}) {
    if (!(t >= -1.0 && t <= 1.0)) throw ConfigError("inter thresholds must lie in [-1, 1]");
  }

  const Json split = Section(raw, "split", {"train", "valid", "test"});
  cfg.split.train = Get<double>(split, "split", "train", cfg.split.train);
  cfg.split.valid = Get<double>(split, "split", "valid", cfg.split.valid);
  cfg.split.test = Get<double>(split, "split", "test", cfg.split.test);
  if (cfg.split.train < 0 || cfg.split.valid < 0 || cfg.split.test < 0 ||
      std::abs(cfg.split.train + cfg.split.valid + cfg.split.test - 1.0) > 1e-9) {
    throw ConfigError("split ratios must be non-negative and sum to 1");
  }

  const Json stats = Section(raw, "stats", {"self_bleu_mode", "name", "genre"});
  const std::string mode = Get<std::string>(stats, "stats", "self_bleu_mode", "corpus");
  if (mode == "corpus") cfg.bleu_mode = SelfBleuMode::kCorpus;
  else if (mode == "sentence_mean") cfg.bleu_mode = SelfBleuMode::kSentenceMean;
  else throw ConfigError("stats.self_bleu_mode must be 'corpus' or 'sentence_mean'");
  cfg.dataset_name = Get<std::string>(stats, "stats", "name", cfg.dataset_name);
  cfg.genre = Get<std::string>(stats, "stats", "genre", cfg.genre);

  const Json ann = Section(raw, "annotation",
                           {"host", "port", "replication", "min_overlap", "flag_below",
                            "min_valid_judgments", "admin_token", "workers", "admins",
                            "load_only"});
  cfg.annotation_host = Get<std::string>(ann, "annotation", "host", cfg.annotation_host);
  cfg.annotation_port = Get<int>(ann, "annotation", "port", cfg.annotation_port);
  cfg.annotation.replication = Get<int>(ann, "annotation", "replication", cfg.annotation.replication);
  cfg.annotation.min_overlap = Get<size_t>(ann, "annotation", "min_overlap", cfg.annotation.min_overlap);
  cfg.annotation.flag_below = Get<double>(ann, "annotation", "flag_below", cfg.annotation.flag_below);
  cfg.annotation.min_valid_judgments =
      Get<size_t>(ann, "annotation", "min_valid_judgments", cfg.annotation.min_valid_judgments);
  cfg.annotation.admin_token = Get<std::string>(ann, "annotation", "admin_token", "");
  cfg.workers = Get<std::vector<std::string>>(ann, "annotation", "workers", {});
  cfg.admins = Get<std::vector<std::string>>(ann, "annotation", "admins", {});
  cfg.annotation_load_only = Get<bool>(ann, "annotation", "load_only", false);
  cfg.annotation.Validate();
  if (cfg.annotation_port < 0 || cfg.annotation_port > 65535) {
    throw ConfigError("annotation.port must lie in [0, 65535]");
  }
  return cfg;
}

inline PipelineConfig LoadPipelineConfig(const fs::path &path,
                                         const std::vector<std::string> &overrides = {}) {
  if (!fs::exists(path)) throw ConfigError("config file not found: " + path.string());
  Json raw;
  try {
    raw = Json::parse(ReadFile(path));
  } catch (const Json::parse_error &e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  for (const std::string &o : overrides) ApplyOverride(raw, o);
  return ParsePipelineConfig(raw, fs::absolute(path).parent_path());
}

}  // namespace paramine::pipeline

#endif  // PARAMINE_PIPELINE_CONFIG_HPP_
