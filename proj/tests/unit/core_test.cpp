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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "paramine/corpus.hpp"
#include "paramine/embedder.hpp"
#include "paramine/encoder.hpp"
#include "paramine/util/hash.hpp"
#include "paramine/util/rng.hpp"
#include "paramine/util/text.hpp"

namespace paramine {
namespace {

fs::path TempDir(const std::string &name) {
  fs::path dir = fs::temp_directory_path() / ("paramine_core_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void WriteLines(const fs::path &path, const std::vector<std::string> &lines) {
  std::ofstream out(path);
  for (const auto &l : lines) out << l << '\n';
}

TEST(TextTest, NormalizeExamples) {
  EXPECT_EQ(NormalizeSentence("We  Used POS tags "), "we used pos tags");
  EXPECT_EQ(NormalizeSentence(""), "");
  EXPECT_EQ(NormalizeSentence("Word Sense Disambiguation (WSD)"),
            "word sense disambiguation (wsd)");
  EXPECT_EQ(NormalizeSentence("\tA\nB  "), "a b");
}

TEST(TextTest, NormalizeIsIdempotent) {
  Rng rng(5);
  const std::string alphabet = "aBcD eF\t.,()\xC3\xA9Z";
  for (int i = 0; i < 500; ++i) {
    std::string s;
    const size_t n = rng.Index(40);
    for (size_t k = 0; k < n; ++k) s += alphabet[rng.Index(alphabet.size() - 2)];
    if (rng.Bernoulli(0.3)) s += "\xC3\xA9";
    const std::string once = NormalizeSentence(s);
    EXPECT_EQ(NormalizeSentence(once), once) << s;
  }
}

TEST(TextTest, StripEndingPunctAndTokens) {
  EXPECT_EQ(StripEndingPunct("rationales are never given during training. "),
            "rationales are never given during training");
  EXPECT_EQ(StripEndingPunct("no punct"), "no punct");
  EXPECT_EQ(CountTokens("  a  b c "), 3u);
  EXPECT_EQ(SplitWhitespace("x\ty  z").size(), 3u);
  EXPECT_EQ(CountChars("caf\xC3\xA9"), 4u);
}

TEST(HashTest, KnownVectors) {
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(HexDigest(Fnv1a64("a")), "af63dc4c8601ec8c");
}

TEST(RngTest, SeededSequencesRepeat) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const uint64_t x = a.NextU64();
    EXPECT_EQ(x, b.NextU64());
    differs = differs || x != c.NextU64();
  }
  EXPECT_TRUE(differs);
}

TEST(RngTest, IndexIsInRangeAndRoughlyUniform) {
  Rng rng(1);
  std::array<int, 7> counts{};
  for (int i = 0; i < 70000; ++i) {
    const size_t k = rng.Index(7);
    ASSERT_LT(k, 7u);
    ++counts[k];
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 400);
}

TEST(CorpusTest, LoaderMapsSections) {
  const fs::path dir = TempDir("sections");
  WriteLines(dir / "c.jsonl",
             {R"({"paper_id":"P1","section":"Abstract","index":0,"text":"We study parsing here."})",
              R"({"paper_id":"P1","section":"Introduction","index":0,"text":"Parsing is hard."})",
              R"({"paper_id":"P1","section":"Method","index":0,"text":"We use a CRF."})"});
  LoadedCorpus lc = LoadCorpus(dir / "c.jsonl", Source::kAcl);
  ASSERT_EQ(lc.corpus.sentences().size(), 3u);
  EXPECT_EQ(lc.corpus.sentences()[0].section, Section::kAbstract);
  EXPECT_EQ(lc.corpus.sentences()[1].section, Section::kIntroduction);
  EXPECT_EQ(lc.corpus.sentences()[2].section, Section::kOther);
  EXPECT_EQ(lc.corpus.sentences()[2].section_label, "method");
  EXPECT_EQ(lc.corpus.sentences()[0].sentence_id, "P1:abstract:0");
  EXPECT_EQ(lc.corpus.sentences()[0].text, "we study parsing here.");
  EXPECT_EQ(lc.corpus.Meta("P1").source, Source::kAcl);
}

TEST(CorpusTest, BlankTextIsSkippedAndReported) {
  const fs::path dir = TempDir("blank");
  WriteLines(dir / "c.jsonl",
             {R"({"paper_id":"P1","section":"abstract","index":0,"text":"   "})",
              R"({"paper_id":"P1","section":"abstract","index":1,"text":"a real sentence here."})",
              "not json"});
  LoadedCorpus lc = LoadCorpus(dir / "c.jsonl", Source::kOther);
  EXPECT_EQ(lc.corpus.sentences().size(), 1u);
  EXPECT_EQ(lc.report.records, 3u);
  EXPECT_EQ(lc.report.skipped, 2u);
  EXPECT_EQ(lc.report.errors[0].line, 1u);
}

TEST(CorpusTest, DuplicatePositionRejectsSecondRecord) {
  const fs::path dir = TempDir("dup");
  WriteLines(dir / "c.jsonl",
             {R"({"paper_id":"P1","section":"abstract","index":0,"text":"first version of it."})",
              R"({"paper_id":"P1","section":"Abstract","index":0,"text":"second version of it."})"});
  LoadedCorpus lc = LoadCorpus(dir / "c.jsonl", Source::kOther);
  ASSERT_EQ(lc.corpus.sentences().size(), 1u);
  EXPECT_EQ(lc.corpus.sentences()[0].text, "first version of it.");
  ASSERT_EQ(lc.report.errors.size(), 1u);
  EXPECT_NE(lc.report.errors[0].message.find("duplicate"), std::string::npos);
}

TEST(CorpusTest, LengthBoundsMarkIneligible) {
  CorpusOptions opts;
  Sentence s = MakeSentence("x", "P", Section::kAbstract, "abstract", 0, "too short", opts);
  EXPECT_FALSE(s.eligible);
  Sentence t = MakeSentence("y", "P", Section::kAbstract, "abstract", 1, "this one is long enough",
                            opts);
  EXPECT_TRUE(t.eligible);
}

TEST(CorpusTest, CitationEdgeRules) {
  const fs::path dir = TempDir("edges");
  WriteLines(dir / "c.jsonl",
             {R"({"paper_id":"P1","section":"related work","index":0,"sentence_id":"s17","text":"P2 propose a parser for trees."})"});
  LoadedCorpus lc = LoadCorpus(dir / "c.jsonl", Source::kOther);
  WriteLines(dir / "e.jsonl",
             {R"({"citing_paper_id":"P1","cited_paper_id":"P2","citing_sentence_id":"s17"})",
              R"({"citing_paper_id":"P1","cited_paper_id":"P1","citing_sentence_id":"s17"})",
              R"({"citing_paper_id":"P1","cited_paper_id":"P2","citing_sentence_id":"s99"})",
              R"({"citing_paper_id":"P3","cited_paper_id":"P2","citing_sentence_id":"s17"})"});
  LoadedEdges e = LoadCitationEdges(dir / "e.jsonl", lc.corpus);
  ASSERT_EQ(e.edges.size(), 1u);
  EXPECT_EQ(e.edges[0].citing_sentence.sentence_id, "s17");
  EXPECT_EQ(e.report.skipped_self_citation, 1u);
  EXPECT_EQ(e.report.skipped_unknown_sentence, 1u);
  EXPECT_EQ(e.report.skipped_wrong_paper, 1u);
}

std::unique_ptr<TableEncoder> ToyEncoder() {
  std::unordered_map<std::string, std::vector<float>> t{
      {"x", {1.0f, 0.0f}}, {"y", {0.0f, 1.0f}}, {"z", {1.0f, 1.0f}}};
  return std::make_unique<TableEncoder>("toy", std::move(t));
}

TEST(CosineTest, AnalyticValues) {
  const std::vector<float> a{1, 0}, b{0, 1}, c{1, 1}, v{0.3f, -2.0f};
  EXPECT_DOUBLE_EQ(Cosine(v, v), 1.0);
  EXPECT_DOUBLE_EQ(Cosine(a, b), 0.0);
  EXPECT_NEAR(Cosine(a, c), 0.70710678118654752, 1e-12);
  const std::vector<float> zero{0, 0};
  EXPECT_THROW(Cosine(a, zero), DataError);
  const std::vector<float> three{1, 0, 0};
  EXPECT_THROW(Cosine(a, three), DataError);
}

TEST(CosineTest, SymmetricScaleInvariantBounded) {
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    std::vector<float> a(16), b(16), a2(16);
    for (size_t k = 0; k < 16; ++k) {
      a[k] = static_cast<float>(rng.Normal());
      b[k] = static_cast<float>(rng.Normal());
      a2[k] = a[k] * 4.0f;
    }
    const double ab = Cosine(a, b);
    EXPECT_DOUBLE_EQ(ab, Cosine(b, a));
    EXPECT_NEAR(ab, Cosine(a2, b), 1e-6);
    EXPECT_LE(ab, 1.0);
    EXPECT_GE(ab, -1.0);
  }
}

TEST(PairwiseTest, Examples) {
  const std::string tag = "t";
  std::vector<SentenceVector> a{{"v", {1, 0}, tag}};
  auto r = PairwiseAboveThreshold(a, a, 0.5);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0], (ScoredPair{"v", "v", 1.0}));
  std::vector<SentenceVector> b{{"w", {0, 1}, tag}};
  EXPECT_TRUE(PairwiseAboveThreshold(a, b, 0.0).empty());
  std::vector<SentenceVector> many{{"p", {1, 0}, tag}, {"q", {0.6f, 0.8f}, tag}};
  std::vector<SentenceVector> other{{"r", {0.8f, 0.6f}, tag}, {"s", {-1, 0}, tag}};
  EXPECT_TRUE(PairwiseAboveThreshold(many, other, 1.0).empty());
  EXPECT_TRUE(PairwiseAboveThreshold({}, other, 0.0).empty());
  std::vector<SentenceVector> bad{{"u", {1, 0}, "other"}};
  EXPECT_THROW(PairwiseAboveThreshold(a, bad, 0.0), DataError);
}

TEST(PairwiseTest, MatchesBruteForce) {
  Rng rng(3);
  std::vector<SentenceVector> a, b;
  for (size_t i = 0; i < 200; ++i) {
    std::vector<float> va(8), vb(8);
    for (size_t k = 0; k < 8; ++k) {
      va[k] = static_cast<float>(rng.Normal());
      vb[k] = static_cast<float>(rng.Normal());
    }
    a.push_back({"a" + std::to_string(i), va, "t"});
    b.push_back({"b" + std::to_string(i), vb, "t"});
  }
  const double tau = 0.6;
  const auto got = PairwiseAboveThreshold(a, b, tau);
  std::vector<ScoredPair> want;
  for (const auto &x : a) {
    for (const auto &y : b) {
      const double s = Cosine(x.vector, y.vector);
      if (s > tau) want.push_back({x.sentence_id, y.sentence_id, s});
    }
  }
  ASSERT_EQ(got.size(), want.size());
  for (size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].id_a, want[i].id_a);
    EXPECT_EQ(got[i].id_b, want[i].id_b);
    EXPECT_NEAR(got[i].similarity, want[i].similarity, 1e-12);
  }
}

TEST(EmbedderTest, BatchShapeAndDeterminism) {
  auto enc = MakeEncoder({});
  Embedder e(*enc, {});
  std::vector<Sentence> batch;
  for (int i = 0; i < 5; ++i) {
    batch.push_back(MakeSentence("s" + std::to_string(i), "P", Section::kAbstract, "abstract",
                                 static_cast<uint32_t>(i),
                                 "sentence number " + std::to_string(i) + " of the batch"));
  }
  const auto vecs = e.EmbedBatch(batch);
  ASSERT_EQ(vecs.size(), 5u);
  for (const auto &v : vecs) {
    EXPECT_EQ(v.vector.size(), enc->dim());
    EXPECT_EQ(v.encoder_tag, e.encoder_tag());
  }
  EXPECT_TRUE(e.EmbedBatch(std::span<const Sentence>()).empty());
  auto enc2 = MakeEncoder({});
  Embedder other(*enc2, {});
  EXPECT_EQ(other.EmbedText(batch[2].text), vecs[2].vector);
  EXPECT_THROW(e.EmbedText(""), DataError);
}

TEST(EmbedderTest, CacheHitIsBitwiseIdentical) {
  auto enc = MakeEncoder({});
  EmbeddingCache cache;
  Embedder e(*enc, {}, &cache);
  const auto v1 = e.EmbedText("we propose a new parser");
  const auto v2 = e.EmbedText("we propose a new parser");
  EXPECT_EQ(0, std::memcmp(v1.data(), v2.data(), v1.size() * sizeof(float)));
  EXPECT_EQ(e.stats().cache_hits, 1u);
  EXPECT_EQ(e.stats().encoded, 1u);
}

TEST(EmbedderTest, CacheFileRoundTripAndTruncatedTail) {
  const fs::path dir = TempDir("cache");
  const fs::path path = dir / "emb.bin";
  auto enc = MakeEncoder({});
  std::vector<float> v;
  {
    EmbeddingCache cache(path);
    Embedder e(*enc, {}, &cache);
    v = e.EmbedText("a sentence to cache");
    e.EmbedText("another sentence to cache");
    cache.Flush();
  }
  {
    EmbeddingCache cache(path);
    EXPECT_EQ(cache.size(), 2u);
    Embedder e(*enc, {}, &cache);
    EXPECT_EQ(e.EmbedText("a sentence to cache"), v);
    EXPECT_EQ(e.stats().cache_hits, 1u);
  }
  fs::resize_file(path, fs::file_size(path) - 7);
  EmbeddingCache truncated(path);
  EXPECT_EQ(truncated.size(), 1u);

  WriteLines(dir / "junk.bin", {"not a cache"});
  EXPECT_THROW(EmbeddingCache(dir / "junk.bin"), ConfigError);
}

TEST(EmbedderTest, PoolingAndTags) {
  auto enc = ToyEncoder();
  EmbedConfig first;
  first.pooling = Pooling::kFirstToken;
  Embedder mean(*enc, {}), head(*enc, first);
  EXPECT_NE(mean.encoder_tag(), head.encoder_tag());
  EXPECT_EQ(head.EmbedText("y x"), (std::vector<float>{0.0f, 1.0f}));
  EXPECT_EQ(mean.EmbedText("y x"), (std::vector<float>{0.5f, 0.5f}));
}

TEST(EncoderTest, UnknownNameIsConfigError) {
  EncoderSpec spec;
  spec.name = "bert-large";
  EXPECT_THROW(MakeEncoder(spec), ConfigError);
  spec.name = "table";
  EXPECT_THROW(MakeEncoder(spec), ConfigError);
  EmbedConfig bad;
  bad.similarity_threshold = 1.5;
  EXPECT_THROW(bad.Validate(), ConfigError);
}

TEST(EncoderTest, HashedEncoderRelatesParaphrases) {
  auto enc = MakeEncoder({});
  Embedder e(*enc, {});
  const double close = Cosine(e.EmbedText("we propose a novel method for parsing"),
                              e.EmbedText("we present a new approach for parsing"));
  const double far = Cosine(e.EmbedText("we propose a novel method for parsing"),
                            e.EmbedText("table 3 lists the corpus statistics"));
  EXPECT_GT(close, far);
}

}  // namespace
}  // namespace paramine
