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

#ifndef PARAMINE_ENCODER_HPP_
#define PARAMINE_ENCODER_HPP_

#include <cctype>
#include <cmath>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "paramine/error.hpp"
#include "paramine/lexicon.hpp"
#include "paramine/util/hash.hpp"
#include "paramine/util/io.hpp"
#include "paramine/util/text.hpp"

namespace paramine {

// Row-major matrix of token states: one row per token.
class TokenMatrix {
 public:
  TokenMatrix() = default;
  TokenMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0f) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  std::span<float> row(size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const float> row(size_t r) const { return {data_.data() + r * cols_, cols_}; }

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<float> data_;
};

inline double Dot(std::span<const float> a, std::span<const float> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += static_cast<double>(a[i]) * b[i];
  return s;
}

inline double Norm(std::span<const float> a) { return std::sqrt(Dot(a, a)); }

// A contextual token encoder. Layer 0 is the static (context-free) embedding;
// layer num_layers() is the final layer.
class Encoder {
 public:
  virtual ~Encoder() = default;
  virtual std::string tag() const = 0;
  virtual size_t dim() const = 0;
  virtual size_t num_layers() const = 0;
  virtual size_t max_tokens() const = 0;
  virtual TokenMatrix TokenStates(const std::vector<std::string> &tokens,
                                  size_t layer) const = 0;
};

// Shared contextualization: each layer mixes a token's state with its two
// neighbours, so identical words in different contexts drift apart while
// staying close to their static embedding.
inline TokenMatrix Contextualize(TokenMatrix states, size_t layers, double mix) {
  const size_t n = states.rows(), d = states.cols();
  if (n < 2 || mix <= 0.0) return states;
  TokenMatrix next(n, d);
  for (size_t l = 0; l < layers; ++l) {
    for (size_t i = 0; i < n; ++i) {
      auto out = next.row(i);
      auto self = states.row(i);
      auto left = states.row(i == 0 ? i : i - 1);
      auto right = states.row(i + 1 == n ? i : i + 1);
      for (size_t k = 0; k < d; ++k) {
        out[k] = static_cast<float>((1.0 - mix) * self[k] + 0.5 * mix * (left[k] + right[k]));
      }
    }
    std::swap(states, next);
  }
  return states;
}

// Strips leading/trailing punctuation; returns the token itself if nothing
// alphanumeric remains.
inline std::string LexicalKey(std::string_view token) {
  size_t b = 0, e = token.size();
  auto punct = [](char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; };
  while (b < e && punct(token[b])) ++b;
  while (e > b && punct(token[e - 1])) --e;
  if (b == e) return std::string(token);
  return std::string(token.substr(b, e - b));
}

// Crude suffix stripper so that word forms (train/training/trained) share a
// component.
inline std::string CrudeStem(std::string_view w) {
  static const char *const kSuffixes[] = {"ations", "ation", "ings", "ing", "edly",
                                          "ies",    "ed",    "es",   "ly",  "s"};
  for (const char *suf : kSuffixes) {
    const std::string_view s(suf);
    if (w.size() > s.size() + 2 && w.substr(w.size() - s.size()) == s) {
      return std::string(w.substr(0, w.size() - s.size()));
    }
  }
  return std::string(w);
}

struct HashedEncoderOptions {
  size_t dim = 128;
  size_t layers = 12;
  double context_mix = 0.1;
  size_t max_tokens = 256;
  uint64_t seed = 0x5eedULL;
};

// Deterministic encoder built from hashed random projections: a concept
// component shared by lexicon synonyms, a stem component shared by word
// forms, character-trigram features, and a punctuation marker. Function
// words get a reduced norm so that mean pooling is dominated by content.
class HashedContextEncoder : public Encoder {
 public:
  explicit HashedContextEncoder(HashedEncoderOptions opts = {},
                                const Lexicon &lexicon = Lexicon::Scientific())
      : opts_(opts), lexicon_(lexicon) {
    if (opts_.dim == 0) throw ConfigError("encoder dimension must be positive");
  }

  std::string tag() const override {
    return "hashctx-v1-d" + std::to_string(opts_.dim) + "-l" + std::to_string(opts_.layers);
  }
  size_t dim() const override { return opts_.dim; }
  size_t num_layers() const override { return opts_.layers; }
  size_t max_tokens() const override { return opts_.max_tokens; }

  TokenMatrix TokenStates(const std::vector<std::string> &tokens,
                          size_t layer) const override {
    TokenMatrix states(tokens.size(), opts_.dim);
    for (size_t i = 0; i < tokens.size(); ++i) {
      const std::vector<float> &v = StaticVector(tokens[i]);
      std::copy(v.begin(), v.end(), states.row(i).begin());
    }
    return Contextualize(std::move(states), std::min(layer, opts_.layers), opts_.context_mix);
  }

  const std::vector<float> &StaticVector(const std::string &token) const {
    {
      std::shared_lock lock(mu_);
      auto it = static_cache_.find(token);
      if (it != static_cache_.end()) return it->second;
    }
    std::vector<float> v = ComputeStatic(token);
    std::unique_lock lock(mu_);
    return static_cache_.emplace(token, std::move(v)).first->second;
  }

 private:
  void AddGaussian(std::vector<double> &acc, std::string_view key, double weight) const {
    uint64_t state = Fnv1a64(key) ^ opts_.seed;
    const double scale = weight / std::sqrt(static_cast<double>(opts_.dim));
    for (size_t k = 0; k < opts_.dim; k += 2) {
      double u1 = static_cast<double>(SplitMix64(state) >> 11) * 0x1.0p-53;
      const double u2 = static_cast<double>(SplitMix64(state) >> 11) * 0x1.0p-53;
      if (u1 <= 0.0) u1 = 0x1.0p-53;
      const double r = std::sqrt(-2.0 * std::log(u1));
      acc[k] += scale * r * std::cos(6.283185307179586 * u2);
      if (k + 1 < opts_.dim) acc[k + 1] += scale * r * std::sin(6.283185307179586 * u2);
    }
  }

  std::vector<float> ComputeStatic(const std::string &token) const {
    const std::string key = LexicalKey(token);
    std::vector<double> acc(opts_.dim, 0.0);
    AddGaussian(acc, "c:" + std::string(lexicon_.Concept(key)), 0.7);
    AddGaussian(acc, "s:" + CrudeStem(key), 0.5);

    const std::string padded = "<" + key + ">";
    if (padded.size() >= 3) {
      const size_t n = padded.size() - 2;
      const double w = 0.35 / std::sqrt(static_cast<double>(n));
      for (size_t i = 0; i < n; ++i) AddGaussian(acc, "g:" + padded.substr(i, 3), w);
    }
    if (key.size() != token.size()) {
      std::string marks;
      for (char c : token) {
        if (std::ispunct(static_cast<unsigned char>(c))) marks += c;
      }
      AddGaussian(acc, "p:" + marks, 0.2);
    }

    double norm = 0.0;
    for (double x : acc) norm += x * x;
    norm = std::sqrt(norm);
    const double target = IsStopword(key) ? 0.4 : 1.0;
    std::vector<float> out(opts_.dim);
    for (size_t k = 0; k < opts_.dim; ++k) {
      out[k] = static_cast<float>(norm > 0 ? acc[k] * target / norm : 0.0);
    }
    return out;
  }

  HashedEncoderOptions opts_;
  const Lexicon &lexicon_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<std::string, std::vector<float>> static_cache_;
};

// Encoder over a fixed word-vector table (e.g. a word2vec/GloVe text file:
// "word v1 v2 ... vd" per line). Out-of-table words fall back to hashed
// vectors from an internal HashedContextEncoder of the same dimension.
class TableEncoder : public Encoder {
 public:
  TableEncoder(std::string name, std::unordered_map<std::string, std::vector<float>> table,
               size_t layers = 0, double context_mix = 0.0, size_t max_tokens = 256)
      : name_(std::move(name)),
        table_(std::move(table)),
        layers_(layers),
        mix_(context_mix),
        max_tokens_(max_tokens) {
    if (table_.empty()) throw ConfigError("encoder table is empty: " + name_);
    dim_ = table_.begin()->second.size();
    for (const auto &[w, v] : table_) {
      if (v.size() != dim_) throw ConfigError("inconsistent vector dimension for '" + w + "'");
    }
    HashedEncoderOptions fallback;
    fallback.dim = dim_;
    fallback_ = std::make_unique<HashedContextEncoder>(fallback);
  }

  static std::unique_ptr<TableEncoder> FromTextFile(const fs::path &path, size_t layers = 12,
                                                    double context_mix = 0.1) {
    if (!fs::exists(path)) throw ConfigError("encoder vectors not found: " + path.string());
    std::unordered_map<std::string, std::vector<float>> table;
    ForEachLine(path, [&](size_t, const std::string &line) {
      auto parts = SplitWhitespace(line);
      if (parts.size() < 2) return;
      std::vector<float> v;
      v.reserve(parts.size() - 1);
      for (size_t i = 1; i < parts.size(); ++i) v.push_back(std::stof(parts[i]));
      table.emplace(parts[0], std::move(v));
    });
    const std::string name =
        "table-" + HexDigest(Fnv1a64(ReadFile(path))).substr(0, 8);
    return std::make_unique<TableEncoder>(name, std::move(table), layers, context_mix);
  }

  std::string tag() const override { return name_ + "-l" + std::to_string(layers_); }
  size_t dim() const override { return dim_; }
  size_t num_layers() const override { return layers_; }
  size_t max_tokens() const override { return max_tokens_; }

  TokenMatrix TokenStates(const std::vector<std::string> &tokens,
                          size_t layer) const override {
    TokenMatrix states(tokens.size(), dim_);
    for (size_t i = 0; i < tokens.size(); ++i) {
      auto it = table_.find(tokens[i]);
      if (it == table_.end()) it = table_.find(LexicalKey(tokens[i]));
      const std::vector<float> &v =
          it != table_.end() ? it->second : fallback_->StaticVector(tokens[i]);
      std::copy(v.begin(), v.end(), states.row(i).begin());
    }
    return Contextualize(std::move(states), std::min(layer, layers_), mix_);
  }

 private:
  std::string name_;
  std::unordered_map<std::string, std::vector<float>> table_;
  size_t dim_ = 0;
  size_t layers_;
  double mix_;
  size_t max_tokens_;
  std::unique_ptr<HashedContextEncoder> fallback_;
};

struct EncoderSpec {
  std::string name = "hashctx-v1";
  size_t dim = 128;
  size_t layers = 12;
  double context_mix = 0.1;
  std::string vectors_path;
};

// Resolves an encoder by name. Unknown names and missing vector files are
// configuration errors.
inline std::unique_ptr<Encoder> MakeEncoder(const EncoderSpec &spec) {
  if (spec.name == "hashctx-v1") {
    HashedEncoderOptions opts;
    opts.dim = spec.dim;
    opts.layers = spec.layers;
    opts.context_mix = spec.context_mix;
    return std::make_unique<HashedContextEncoder>(opts);
  }
  if (spec.name == "table") {
    if (spec.vectors_path.empty()) throw ConfigError("encoder 'table' needs a vectors file");
    return TableEncoder::FromTextFile(spec.vectors_path, spec.layers, spec.context_mix);
  }
  throw ConfigError("encoder unavailable: " + spec.name);
}

}  // namespace paramine

#endif  // PARAMINE_ENCODER_HPP_
