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

#include "paramine/span/discovery.hpp"
#include "paramine/synth.hpp"

namespace paramine {
namespace {

SpanModelConfig Forced(double c, double b, double d) {
  SpanModelConfig cfg;
  cfg.p_c = c;
  cfg.p_b = b;
  cfg.p_d = d;
  return cfg;
}

const PoolSentence kA{"a", "rationales are not provided at training time."};
const PoolSentence kB{"b", "rationales are never given during training."};
const std::vector<PoolSentence> kPool{{"c", "we train a parser."},
                                      {"d", "results are in table 2."}};

TEST(PseudoTest, AllPartsIncluded) {
  const SpanModelConfig cfg = Forced(1, 1, 1);
  bool seen = false;
  for (uint64_t seed = 0; seed < 64 && !seen; ++seed) {
    Rng rng(seed);
    const PseudoExample ex = BuildPseudoExample(kA, kB, kPool, cfg, rng);
    EXPECT_TRUE(ex.recipe.has_c && ex.recipe.has_b && ex.recipe.has_d);
    if (ex.recipe.c_id != "c" || ex.recipe.d_id != "d") continue;
    seen = true;
    EXPECT_EQ(ex.input1, kA.text);
    EXPECT_EQ(ex.input2, "we train a parser rationales are never given during training results "
                         "are in table 2.");
    ASSERT_TRUE(ex.has_answer);
    // input1 has 7 tokens, so input2 starts at 9; B starts after 4 C tokens.
    EXPECT_EQ(ex.span_start, 13u);
    EXPECT_EQ(ex.span_end, 18u);
    EXPECT_EQ(DecodeGoldSpan(ex), "rationales are never given during training");
  }
  EXPECT_TRUE(seen);
}

TEST(PseudoTest, OnlyBAndNoAnswer) {
  Rng rng(1);
  const PseudoExample only_b = BuildPseudoExample(kA, kB, kPool, Forced(0, 1, 0), rng);
  EXPECT_EQ(only_b.input2, "rationales are never given during training");
  EXPECT_EQ(only_b.span_start, Input2Offset(7));
  EXPECT_EQ(only_b.span_end, Input2Offset(7) + 5);
  EXPECT_TRUE(only_b.recipe.c_id.empty());

  const PseudoExample none = BuildPseudoExample(kA, kB, kPool, Forced(1, 0, 1), rng);
  EXPECT_FALSE(none.has_answer);
  EXPECT_EQ(none.span_start, 0u);
  EXPECT_EQ(none.span_end, 0u);
  EXPECT_EQ(DecodeGoldSpan(none), "");
  EXPECT_EQ(none.input2.find("rationales"), std::string::npos);
}

TEST(PseudoTest, InvalidInputs) {
  Rng rng(1);
  EXPECT_THROW(BuildPseudoExample(kA, {"b", "."}, kPool, Forced(1, 1, 1), rng), DataError);
  EXPECT_THROW(BuildPseudoExample(kA, kB, std::vector<PoolSentence>{kPool[0]}, Forced(1, 1, 1),
                                  rng),
               DataError);
  SpanModelConfig bad = Forced(0, 0, 0);
  EXPECT_THROW(bad.Validate(), ConfigError);
  bad = Forced(1, 0, 1);
  bad.no_answer_mode = NoAnswerMode::kResample;
  EXPECT_THROW(bad.Validate(), ConfigError);
  EXPECT_THROW(BuildPseudoDataset({}, kPool, SpanModelConfig{}, rng), DataError);
}

TEST(PseudoTest, InclusionRatesAndSpanInvariant) {
  synth::Generator gen(5);
  const auto pool = gen.Pool(200);
  const auto seeds = gen.SeedPairs(50);
  const SpanModelConfig cfg;
  Rng rng(99);
  size_t c = 0, b = 0, d = 0;
  const size_t n = 10000;
  for (size_t i = 0; i < n; ++i) {
    const SeedPair &s = seeds[i % seeds.size()];
    const PseudoExample ex =
        BuildPseudoExample({s.id_a, s.text_a}, {s.id_b, s.text_b}, pool, cfg, rng);
    c += ex.recipe.has_c;
    b += ex.recipe.has_b;
    d += ex.recipe.has_d;
    ASSERT_TRUE(ex.recipe.has_c || ex.recipe.has_b || ex.recipe.has_d);
    ASSERT_EQ(ex.has_answer, ex.recipe.has_b);
    if (ex.has_answer) {
      ASSERT_EQ(DecodeGoldSpan(ex), StripEndingPunct(s.text_b));
    }
  }
  // Rates conditional on rejecting the empty draw (probability 0.02).
  const double keep = 1.0 - 0.2 * 0.5 * 0.2;
  EXPECT_NEAR(static_cast<double>(c) / n, 0.8 / keep, 0.015);
  EXPECT_NEAR(static_cast<double>(b) / n, 0.5 / keep, 0.015);
  EXPECT_NEAR(static_cast<double>(d) / n, 0.8 / keep, 0.015);

  SpanModelConfig resample;
  resample.no_answer_mode = NoAnswerMode::kResample;
  for (int i = 0; i < 200; ++i) {
    const SeedPair &s = seeds[i % seeds.size()];
    EXPECT_TRUE(
        BuildPseudoExample({s.id_a, s.text_a}, {s.id_b, s.text_b}, pool, resample, rng).has_answer);
  }
}

TEST(PseudoTest, DatasetSizeAndDeterminism) {
  synth::Generator gen(6);
  const auto pool = gen.Pool(100);
  const auto seeds = gen.SeedPairs(100);
  Rng r1(3), r2(3);
  const auto a = BuildPseudoDataset(seeds, pool, SpanModelConfig{}, r1);
  const auto b = BuildPseudoDataset(seeds, pool, SpanModelConfig{}, r2);
  EXPECT_EQ(a.size(), 100u);
  EXPECT_EQ(a, b);
  Rng r3(3);
  EXPECT_EQ(BuildPseudoDataset(seeds, pool, SpanModelConfig{}, r3, 3).size(), 300u);
  for (const auto &ex : a) {
    EXPECT_EQ(PseudoExampleFromJson(PseudoExampleToJson(ex)), ex);
  }
}

class TrainedModel : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    encoder_ = MakeEncoder({}).release();
    featurizer_ = new SpanFeaturizer(*encoder_, 4);
    synth::Generator gen(21);
    const auto pool = gen.Pool(300);
    const auto seeds = gen.SeedPairs(400);
    cfg_.epochs = 3;
    Rng rng(8);
    data_ = BuildPseudoDataset(seeds, pool, cfg_, rng);
    trained_ = new TrainedSpanModel(TrainSpanModel(data_, *featurizer_, cfg_));
  }
  static void TearDownTestSuite() {
    delete trained_;
    delete featurizer_;
    delete encoder_;
  }

  static inline Encoder *encoder_ = nullptr;
  static inline SpanFeaturizer *featurizer_ = nullptr;
  static inline SpanModelConfig cfg_;
  static inline std::vector<PseudoExample> data_;
  static inline TrainedSpanModel *trained_ = nullptr;
};

TEST_F(TrainedModel, ReportAndDeterminism) {
  const TrainReport &r = trained_->report;
  EXPECT_EQ(r.train_examples + r.held_out_examples + r.dropped, data_.size());
  EXPECT_EQ(r.held_out_examples, 40u);
  EXPECT_EQ(r.epoch_losses.size(), 3u);
  EXPECT_LT(r.epoch_losses.back(), r.epoch_losses.front());
  const TrainedSpanModel again = TrainSpanModel(data_, *featurizer_, cfg_);
  EXPECT_EQ(again.model.params(), trained_->model.params());
  EXPECT_THROW(TrainSpanModel({}, *featurizer_, cfg_), DataError);
}

TEST_F(TrainedModel, CheckpointRoundTrip) {
  const fs::path dir = fs::temp_directory_path() / "paramine_span_ckpt";
  fs::remove_all(dir);
  SaveSpanCheckpoint(dir, trained_->model, trained_->report);
  const SpanModel loaded = LoadSpanCheckpoint(dir);
  EXPECT_EQ(loaded.params(), trained_->model.params());
  EXPECT_EQ(loaded.encoder_tag(), trained_->model.encoder_tag());
  SpanDiscoverer a(trained_->model, *featurizer_), b(loaded, *featurizer_);
  for (size_t i = 0; i < 20; ++i) {
    const auto &ex = data_[i];
    const auto t1 = SplitWhitespace(ex.input1), t2 = SplitWhitespace(ex.input2);
    if (t1.size() > t2.size()) continue;
    const auto pa = a.PredictSpan(ex.input1, ex.input2), pb = b.PredictSpan(ex.input1, ex.input2);
    EXPECT_EQ(pa.extracted_span_text, pb.extracted_span_text);
    EXPECT_EQ(pa.rejection_reason, pb.rejection_reason);
  }
  AtomicWriteFile(dir / "manifest.json", "{\"format\": \"other\"}\n");
  EXPECT_THROW(LoadSpanCheckpoint(dir), ConfigError);
}

TEST_F(TrainedModel, EncoderMismatchIsRejected) {
  SpanFeaturizer other(*encoder_, 5);
  EXPECT_THROW(SpanDiscoverer(trained_->model, other), ConfigError);
}

TEST_F(TrainedModel, DiscoverPartialRoutesByThreshold) {
  Embedder emb(*encoder_, {});
  auto S = [](const std::string &id, const std::string &text) {
    return MakeSentence(id, "P", Section::kIntroduction, "introduction", 0, text);
  };
  std::vector<CandidatePair> below;
  below.push_back(MakeCandidate(S("x1", "we use a crf tagger for this task"),
                                S("x2", "following prior work, we use a crf tagger for this "
                                        "task, and results are in table 2."),
                                Channel::kIntraSectionSim, 0.8));
  below.push_back(MakeCandidate(S("y1", "we train the model on news data"),
                                S("y2", "we train the model on news data and test on tweets"),
                                Channel::kIntraSectionSim, 0.95));
  SpanDiscoverer disc(trained_->model, *featurizer_);
  DiscoverReport rep;
  const auto out = DiscoverPartial(below, disc, emb, 0.931, &rep);
  EXPECT_EQ(rep.skipped_above_threshold, 1u);
  EXPECT_EQ(rep.processed, 1u);
  size_t rejected = 0;
  for (const auto &[k, v] : rep.rejected) rejected += v;
  EXPECT_EQ(rep.accepted + rejected, 1u);
  EXPECT_EQ(out.size(), rep.accepted);
  for (const auto &p : out) {
    EXPECT_EQ(p.channel, Channel::kPdbertPartial);
    EXPECT_NE(p.sent_a.text, below[0].sent_b.text);
    EXPECT_NE(p.sent_b.text, below[0].sent_b.text);
  }
}

TEST(ClauseTest, Splitting) {
  const std::string t = "first part, second part; third: fourth part. fifth \xE2\x80\x94 sixth";
  const auto c = SplitClauses(t);
  ASSERT_EQ(c.size(), 6u);
  EXPECT_EQ(ClauseRunText(t, c, 0, 0), "first part");
  EXPECT_EQ(ClauseRunText(t, c, 1, 2), "second part; third");
  EXPECT_EQ(ClauseRunText(t, c, 5, 5), "sixth");
  EXPECT_EQ(SplitClauses("accuracy is 3.5 points higher").size(), 1u);
  EXPECT_TRUE(SplitClauses(" , ; ").empty());
}

TEST(ClauseTest, BaselineMatchesBruteForce) {
  auto enc = MakeEncoder({});
  Embedder emb(*enc, {});
  synth::Generator gen(17);
  for (int trial = 0; trial < 60; ++trial) {
    const size_t k = 1 + gen.rng().Index(6);
    std::string long_text;
    for (size_t i = 0; i < k; ++i) {
      std::string s = StripEndingPunct(gen.RandomSentence());
      long_text += (i ? ", " : "") + s;
    }
    long_text += ".";
    const std::string short_text = StripEndingPunct(gen.RandomSentence());
    const auto clauses = SplitClauses(long_text);
    const auto target = emb.EmbedText(short_text);
    double best = -2;
    size_t bf = 0, bl = 0;
    for (size_t len = 1; len <= clauses.size(); ++len) {
      for (size_t f = 0; f + len <= clauses.size(); ++f) {
        const double s = Cosine(target, emb.EmbedText(ClauseRunText(long_text, clauses, f,
                                                                    f + len - 1)));
        if (s > best) {
          best = s;
          bf = f;
          bl = f + len - 1;
        }
      }
    }
    const ClauseChoice c = BestClauseBaseline(short_text, long_text, emb);
    EXPECT_EQ(c.clause_count, clauses.size());
    EXPECT_EQ(c.first, bf);
    EXPECT_EQ(c.last, bl);
    EXPECT_DOUBLE_EQ(c.similarity, best);
  }
}

TEST(ClauseTest, VerbatimClauseAndSingleClause) {
  auto enc = MakeEncoder({});
  Embedder emb(*enc, {});
  const std::string long_text =
      "following prior work, we use a conditional random field tagger, and report f1 scores.";
  const ClauseChoice c = BestClauseBaseline("we use a conditional random field tagger", long_text, emb);
  EXPECT_EQ(c.first, 1u);
  EXPECT_EQ(c.last, 1u);
  EXPECT_EQ(c.text, "we use a conditional random field tagger");
  const DiscoveryResult r =
      BaselineDiscovery("we use a conditional random field tagger", long_text, emb, 4);
  EXPECT_TRUE(r.accepted);
  const DiscoveryResult one = BaselineDiscovery("a short one", "there is only one clause here", emb, 4);
  EXPECT_FALSE(one.accepted);
  EXPECT_EQ(one.rejection_reason, RejectionReason::kFullSentenceSpan);
}

TEST(DiscoveryTest, ClassifySpan) {
  const std::vector<std::string> toks = SplitWhitespace("a b c d e f g h,");
  EXPECT_EQ(ClassifySpan("s", "l", toks, 0, 7, 4).rejection_reason,
            RejectionReason::kFullSentenceSpan);
  EXPECT_EQ(ClassifySpan("s", "l", toks, 1, 3, 4).rejection_reason, RejectionReason::kEmptySpan);
  const DiscoveryResult ok = ClassifySpan("s", "l", toks, 4, 7, 4);
  EXPECT_TRUE(ok.accepted);
  EXPECT_EQ(ok.extracted_span_text, "e f g h");
}

TEST(DiscoveryTest, SpeedAndEvaluation) {
  EXPECT_DOUBLE_EQ(PairsPerMinute(60, 120.0), 30.0);
  EXPECT_THROW(PairsPerMinute(1, 0.0), DataError);

  auto enc = MakeEncoder({});
  TokenMatchScorer scorer(*enc, 8);
  auto fixed = [](const std::string &s, const std::string &l) {
    DiscoveryResult r;
    r.short_sentence = s;
    r.long_sentence = l;
    r.extracted_span_text = s;
    r.accepted = true;
    return r;
  };
  std::vector<EvalPair> pairs{{"we use a crf tagger", "so we use a crf tagger here"},
                              {"results are in table two", "overall results are in table two"}};
  double t = 0;
  SecondsClock clock = [&t] { return t += 1.0; };
  auto reps = EvaluateDiscovery({{"m1", fixed}, {"m2", fixed}}, pairs, scorer, 0.7, 100, clock);
  ASSERT_EQ(reps.size(), 2u);
  EXPECT_EQ(reps[0].size, 2u);
  EXPECT_EQ(reps[0].size_filtered, 2u);
  EXPECT_NEAR(reps[0].quality, 100.0, 1e-6);
  EXPECT_EQ(reps[0].size, reps[1].size);
  EXPECT_DOUBLE_EQ(reps[0].quality, reps[1].quality);
  EXPECT_DOUBLE_EQ(reps[0].speed, reps[1].speed);

  t = 0;
  auto budget = EvaluateDiscovery({{"m", fixed}}, pairs, scorer, 0.7, 1.5, clock);
  EXPECT_EQ(budget[0].processed, 1u);
  const std::string table = FormatDiscoveryTable(reps);
  EXPECT_NE(table.find("Size (filtered)"), std::string::npos);
}

}  // namespace
}  // namespace paramine
