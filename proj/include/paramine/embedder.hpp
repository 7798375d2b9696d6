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

#ifndef PARAMINE_EMBEDDER_HPP_
#define PARAMINE_EMBEDDER_HPP_

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "paramine/corpus.hpp"
#include "paramine/encoder.hpp"
#include "paramine/error.hpp"
#include "paramine/util/hash.hpp"
#include "paramine/util/log.hpp"

namespace paramine {

enum class Pooling { kMean, kFirstToken };

inline const char *PoolingName(Pooling p) {
  return p == Pooling::kMean ? "mean" : "first_token";
}

inline Pooling PoolingFromName(std::string_view name) {
  if (name == "mean") return Pooling::kMean;
  if (name == "first_token") return Pooling::kFirstToken;
  throw ConfigError("unknown pooling: " + std::string(name));
}

struct EmbedConfig {
  Pooling pooling = Pooling::kMean;
  size_t batch_size = 64;
  double similarity_threshold = 0.931;

  void Validate() const {
    if (batch_size == 0) throw ConfigError("batch_size must be positive");
    if (!(similarity_threshold >= 0.0 && similarity_threshold <= 1.0)) {
      throw ConfigError("similarity_threshold must lie in [0, 1]");
    }
  }
};

struct SentenceVector {
  std::string sentence_id;
  std::vector<float> vector;
  std::string encoder_tag;
};

// cos(a, b) = a.b / (|a| |b|), clamped to [-1, 1].
inline double Cosine(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) throw DataError("dimension mismatch in cosine");
  const double na = Norm(a), nb = Norm(b);
  if (na == 0.0 || nb == 0.0) throw DataError("degenerate embedding");
  return std::clamp(Dot(a, b) / (na * nb), -1.0, 1.0);
}

// Append-only on-disk store of sentence vectors keyed by
// (encoder_tag, FNV-1a-64 of the normalized text).
//
// File layout, all integers and floats little-endian:
//   magic   "PMCACHE1" (8 bytes)
//   records { u32 tag_len; u8 tag[tag_len]; u64 text_hash; u32 dim;
//             f32 values[dim]; }*
// A truncated trailing record (interrupted append) is ignored on load.
class EmbeddingCache {
 public:
  static constexpr char kMagic[8] = {'P', 'M', 'C', 'A', 'C', 'H', 'E', '1'};

  EmbeddingCache() = default;
  explicit EmbeddingCache(fs::path path) : path_(std::move(path)) { Load(); }

  std::optional<std::vector<float>> Get(const std::string &tag, uint64_t text_hash) const {
    std::shared_lock lock(mu_);
    auto it = entries_.find({tag, text_hash});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void Put(const std::string &tag, uint64_t text_hash, std::vector<float> v) {
    std::unique_lock lock(mu_);
    auto [it, inserted] = entries_.emplace(Key{tag, text_hash}, std::move(v));
    if (inserted) pending_.push_back(it->first);
  }

  // Appends records added since the last flush.
  void Flush() {
    std::unique_lock lock(mu_);
    if (path_.empty() || pending_.empty()) return;
    const bool fresh = !fs::exists(path_) || fs::file_size(path_) == 0;
    if (path_.has_parent_path()) fs::create_directories(path_.parent_path());
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    if (!out) throw Error("cannot write embedding cache: " + path_.string());
    if (fresh) out.write(kMagic, sizeof(kMagic));
    for (const Key &k : pending_) {
      const std::vector<float> &v = entries_.at(k);
      PutU32(out, static_cast<uint32_t>(k.first.size()));
      out.write(k.first.data(), static_cast<std::streamsize>(k.first.size()));
      PutU64(out, k.second);
      PutU32(out, static_cast<uint32_t>(v.size()));
      for (float f : v) {
        uint32_t bits;
        std::memcpy(&bits, &f, sizeof(bits));
        PutU32(out, bits);
      }
    }
    pending_.clear();
  }

  size_t size() const {
    std::shared_lock lock(mu_);
    return entries_.size();
  }

 private:
  using Key = std::pair<std::string, uint64_t>;

  static void PutU32(std::ostream &out, uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 4);
  }
  static void PutU64(std::ostream &out, uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 8);
  }
  static bool GetU32(std::istream &in, uint32_t &v) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char *>(b), 4)) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
    return true;
  }
  static bool GetU64(std::istream &in, uint64_t &v) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char *>(b), 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
    return true;
  }

  void Load() {
    if (!fs::exists(path_) || fs::file_size(path_) == 0) return;
    std::ifstream in(path_, std::ios::binary);
    char magic[8];
    if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) {
      throw ConfigError("not an embedding cache file: " + path_.string());
    }
    size_t loaded = 0;
    while (true) {
      uint32_t tag_len, dim;
      uint64_t hash;
      if (!GetU32(in, tag_len) || tag_len > (1u << 16)) break;
      std::string tag(tag_len, '\0');
      if (!in.read(tag.data(), tag_len)) break;
      if (!GetU64(in, hash) || !GetU32(in, dim) || dim > (1u << 20)) break;
      std::vector<float> v(dim);
      bool ok = true;
      for (uint32_t i = 0; i < dim && ok; ++i) {
        uint32_t bits;
        ok = GetU32(in, bits);
        std::memcpy(&v[i], &bits, sizeof(bits));
      }
      if (!ok) break;
      entries_.emplace(Key{std::move(tag), hash}, std::move(v));
      ++loaded;
    }
    if (!in.eof()) PARAMINE_LOG(Warning) << "embedding cache: ignoring trailing bytes";
  }

  fs::path path_;
  mutable std::shared_mutex mu_;
  std::map<Key, std::vector<float>> entries_;
  std::vector<Key> pending_;
};

struct EmbedStats {
  size_t cache_hits = 0;
  size_t encoded = 0;
  size_t truncated = 0;
};

// Sentence embedding front end: pooled final-layer token states, consulting
// the cache before encoding.
class Embedder {
 public:
  Embedder(const Encoder &encoder, EmbedConfig cfg, EmbeddingCache *cache = nullptr)
      : encoder_(encoder), cfg_(cfg), cache_(cache) {
    cfg_.Validate();
  }

  std::string encoder_tag() const {
    return encoder_.tag() + "+" + PoolingName(cfg_.pooling);
  }
  const EmbedConfig &config() const { return cfg_; }
  const Encoder &encoder() const { return encoder_; }
  const EmbedStats &stats() const { return stats_; }

  std::vector<float> EmbedText(const std::string &text) {
    if (text.empty()) throw DataError("cannot embed empty text");
    const std::string tag = encoder_tag();
    const uint64_t h = Fnv1a64(text);
    if (cache_ != nullptr) {
      if (auto hit = cache_->Get(tag, h)) {
        ++stats_.cache_hits;
        return *hit;
      }
    }
    std::vector<std::string> tokens = SplitWhitespace(text);
    if (tokens.size() > encoder_.max_tokens()) {
      ++stats_.truncated;
      PARAMINE_LOG(Warning) << "truncating sentence of " << tokens.size() << " tokens to "
                            << encoder_.max_tokens();
      tokens.resize(encoder_.max_tokens());
    }
    const TokenMatrix states = encoder_.TokenStates(tokens, encoder_.num_layers());
    std::vector<float> v(encoder_.dim(), 0.0f);
    if (cfg_.pooling == Pooling::kFirstToken) {
      auto r = states.row(0);
      std::copy(r.begin(), r.end(), v.begin());
    } else {
      std::vector<double> acc(encoder_.dim(), 0.0);
      for (size_t i = 0; i < states.rows(); ++i) {
        auto r = states.row(i);
        for (size_t k = 0; k < acc.size(); ++k) acc[k] += r[k];
      }
      for (size_t k = 0; k < acc.size(); ++k) {
        v[k] = static_cast<float>(acc[k] / static_cast<double>(states.rows()));
      }
    }
    for (float f : v) {
      if (!std::isfinite(f)) throw DataError("non-finite embedding");
    }
    ++stats_.encoded;
    if (cache_ != nullptr) cache_->Put(tag, h, v);
    return v;
  }

  std::vector<SentenceVector> EmbedBatch(std::span<const Sentence> sentences) {
    std::vector<SentenceVector> out;
    out.reserve(sentences.size());
    const std::string tag = encoder_tag();
    for (size_t b = 0; b < sentences.size(); b += cfg_.batch_size) {
      const size_t e = std::min(sentences.size(), b + cfg_.batch_size);
      for (size_t i = b; i < e; ++i) {
        out.push_back({sentences[i].sentence_id, EmbedText(sentences[i].text), tag});
      }
    }
    return out;
  }

 private:
  const Encoder &encoder_;
  EmbedConfig cfg_;
  EmbeddingCache *cache_;
  EmbedStats stats_;
};

struct ScoredPair {
  std::string id_a;
  std::string id_b;
  double similarity = 0.0;
  bool operator==(const ScoredPair &) const = default;
};

// Every (a, b) in A x B with cos(a, b) > threshold (strict), in A-major order.
inline std::vector<ScoredPair> PairwiseAboveThreshold(std::span<const SentenceVector> a,
                                                      std::span<const SentenceVector> b,
                                                      double threshold) {
  std::vector<ScoredPair> out;
  if (a.empty() || b.empty()) return out;
  const std::string &tag = a.front().encoder_tag;
  auto check = [&](const SentenceVector &v) {
    if (v.encoder_tag != tag) throw DataError("mismatched encoder_tag in pairwise comparison");
  };
  std::vector<double> nb(b.size());
  for (size_t j = 0; j < b.size(); ++j) {
    check(b[j]);
    nb[j] = Norm(b[j].vector);
    if (nb[j] == 0.0) throw DataError("degenerate embedding");
  }
  for (const SentenceVector &va : a) {
    check(va);
    const double na = Norm(va.vector);
    if (na == 0.0) throw DataError("degenerate embedding");
    for (size_t j = 0; j < b.size(); ++j) {
      if (va.vector.size() != b[j].vector.size()) throw DataError("dimension mismatch in cosine");
      const double sim = std::clamp(Dot(va.vector, b[j].vector) / (na * nb[j]), -1.0, 1.0);
      if (sim > threshold) out.push_back({va.sentence_id, b[j].sentence_id, sim});
    }
  }
  return out;
}

}  // namespace paramine

#endif  // PARAMINE_EMBEDDER_HPP_
