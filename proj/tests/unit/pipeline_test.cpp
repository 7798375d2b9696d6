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

#include <gtest/gtest.h>

#include "paramine/pipeline/stages.hpp"

namespace paramine::pipeline {
namespace {

const fs::path kMiniConfig = fs::path(PARAMINE_DATA_DIR) / "mini" / "config.json";

fs::path FreshDir(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / ("paramine_pipeline_" + name);
  fs::remove_all(dir);
  return dir;
}

PipelineConfig MiniConfig(const fs::path &dir, std::vector<std::string> extra = {}) {
  extra.push_back("paths.output_dir=" + (dir / "out").string());
  extra.push_back("paths.cache=" + (dir / "cache.bin").string());
  return LoadPipelineConfig(kMiniConfig, extra);
}

TEST(ConfigTest, Overrides) {
  Json raw = Json::object();
  ApplyOverride(raw, "span.epochs=3");
  ApplyOverride(raw, "stats.name=my set");
  ApplyOverride(raw, "filter.channels=[\"DEFINITION\"]");
  EXPECT_EQ(raw["span"]["epochs"], 3);
  EXPECT_EQ(raw["stats"]["name"], "my set");
  EXPECT_TRUE(raw["filter"]["channels"].is_array());
  EXPECT_THROW(ApplyOverride(raw, "=1"), ConfigError);
  EXPECT_THROW(ApplyOverride(raw, "novalue"), ConfigError);
  EXPECT_THROW(ApplyOverride(raw, "span..epochs=1"), ConfigError);
  EXPECT_THROW(ApplyOverride(raw, "span.epochs.x=1"), ConfigError);

  const PipelineConfig cfg = MiniConfig(FreshDir("cfg"), {"span.epochs=3", "seed=99"});
  EXPECT_EQ(cfg.span.epochs, 3u);
  EXPECT_EQ(cfg.seed, 99u);
  EXPECT_EQ(cfg.span.seed, 99u ^ Fnv1a64("pdbert-train"));
}

TEST(ConfigTest, UnknownAndInvalidKeys) {
  const fs::path dir = FreshDir("keys");
  EXPECT_THROW(MiniConfig(dir, {"bogus=1"}), ConfigError);
  EXPECT_THROW(MiniConfig(dir, {"span.bogus=1"}), ConfigError);
  EXPECT_THROW(MiniConfig(dir, {"span.p_c=1.5"}), ConfigError);
  EXPECT_THROW(MiniConfig(dir, {"split.train=0.9"}), ConfigError);
  EXPECT_THROW(MiniConfig(dir, {"filter.scorer_layer=40"}), ConfigError);
  EXPECT_THROW(LoadPipelineConfig(dir / "absent.json"), ConfigError);
}

TEST(PipelineTest, UnknownStageAndMissingArtifact) {
  const PipelineConfig cfg = MiniConfig(FreshDir("missing"));
  EXPECT_THROW(RunPipeline("nope", cfg), ConfigError);
  try {
    RunPipeline("filter", cfg);
    FAIL() << "expected MissingArtifact";
  } catch (const MissingArtifact &e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("candidates.jsonl"), std::string::npos) << msg;
    EXPECT_NE(msg.find("run stage"), std::string::npos) << msg;
  }
}

TEST(PipelineTest, LockIsExclusive) {
  const PipelineConfig cfg = MiniConfig(FreshDir("lock"));
  {
    OutputLock held(cfg.paths.output_dir);
    EXPECT_THROW(RunPipeline("ingest", cfg), LockError);
  }
  EXPECT_NO_THROW(RunPipeline("ingest", cfg));
}

TEST(PipelineTest, RerunIsNoOpAndOutputIsDeterministic) {
  const fs::path d1 = FreshDir("det1"), d2 = FreshDir("det2");
  const PipelineConfig c1 = MiniConfig(d1), c2 = MiniConfig(d2);
  const auto first = RunPipeline("all", c1);
  for (const auto &o : first) EXPECT_FALSE(o.skipped) << o.stage;
  ASSERT_TRUE(fs::exists(c1.paths.output_dir / "final" / "dataset.jsonl"));
  EXPECT_GT(ReadFinalDataset(c1.paths.output_dir / "final" / "dataset.jsonl").size(), 0u);

  const std::string manifest = ReadFile(ManifestPath(c1, "filter"));
  for (const auto &o : RunPipeline("all", c1)) EXPECT_TRUE(o.skipped) << o.stage;
  EXPECT_EQ(ReadFile(ManifestPath(c1, "filter")), manifest);

  RunPipeline("all", c2);
  for (const char *rel : {"final/dataset.jsonl", "export/train.tsv", "stats/report.txt"}) {
    EXPECT_EQ(ReadFile(c1.paths.output_dir / rel), ReadFile(c2.paths.output_dir / rel)) << rel;
  }
  for (const std::string &stage : AllStages(c1)) {
    EXPECT_EQ(ReadFile(ManifestPath(c1, stage)), ReadFile(ManifestPath(c2, stage))) << stage;
  }

  // A stats-only change reruns stats and nothing upstream.
  const PipelineConfig renamed = MiniConfig(d1, {"stats.name=renamed"});
  for (const auto &o : RunPipeline("all", renamed)) {
    EXPECT_EQ(o.skipped, o.stage != "stats") << o.stage;
  }
  EXPECT_NE(ReadFile(renamed.paths.output_dir / "stats" / "report.txt").find("renamed"),
            std::string::npos);

  // Editing an upstream output forces the consumer to rerun.
  const fs::path intra = c1.paths.output_dir / "intra" / "candidates.jsonl";
  const auto pairs = ReadCandidates(intra);
  ASSERT_FALSE(pairs.empty());
  WriteCandidates(intra, {pairs.begin(), pairs.end() - 1});
  const auto outcome = RunPipeline("filter", renamed);
  EXPECT_FALSE(outcome[0].skipped);
}

TEST(PipelineTest, ChannelSelectionSkipsStages) {
  const PipelineConfig cfg =
      MiniConfig(FreshDir("channels"), {"filter.channels=[\"INTRA_SECTION_SIM\"]"});
  const auto stages = AllStages(cfg);
  EXPECT_EQ(std::count(stages.begin(), stages.end(), "pdbert-train"), 0);
  EXPECT_EQ(std::count(stages.begin(), stages.end(), "citations"), 0);
  RunPipeline("all", cfg);
  for (const auto &r : ReadFinalDataset(cfg.paths.output_dir / "final" / "dataset.jsonl")) {
    for (const auto &c : r.channels) EXPECT_EQ(c, "INTRA_SECTION_SIM");
  }
}

}  // namespace
}  // namespace paramine::pipeline
