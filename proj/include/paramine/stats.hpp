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

#ifndef PARAMINE_STATS_HPP_
#define PARAMINE_STATS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "paramine/error.hpp"
#include "paramine/util/io.hpp"
#include "paramine/util/rng.hpp"
#include "paramine/util/text.hpp"

namespace paramine {

struct TextPair {
  std::string a;
  std::string b;
};

// Clipped n-gram statistics of one hypothesis against one reference.
struct BleuStats {
  std::array<size_t, 4> matches{};
  std::array<size_t, 4> totals{};
  size_t hyp_len = 0;
  size_t ref_len = 0;

  BleuStats &operator+=(const BleuStats &o) {
    for (size_t n = 0; n < 4; ++n) {
      matches[n] += o.matches[n];
      totals[n] += o.totals[n];
    }
    hyp_len += o.hyp_len;
    ref_len += o.ref_len;
    return *this;
  }
};

inline BleuStats ComputeBleuStats(const std::vector<std::string> &hyp,
                                  const std::vector<std::string> &ref) {
  BleuStats s;
  s.hyp_len = hyp.size();
  s.ref_len = ref.size();
  for (size_t n = 1; n <= 4; ++n) {
    std::map<std::vector<std::string>, size_t> ref_counts;
    for (size_t i = 0; i + n <= ref.size(); ++i) {
      ++ref_counts[std::vector<std::string>(ref.begin() + i, ref.begin() + i + n)];
    }
    std::map<std::vector<std::string>, size_t> hyp_counts;
    for (size_t i = 0; i + n <= hyp.size(); ++i) {
      ++hyp_counts[std::vector<std::string>(hyp.begin() + i, hyp.begin() + i + n)];
    }
    for (const auto &[gram, count] : hyp_counts) {
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) s.matches[n - 1] += std::min(count, it->second);
      s.totals[n - 1] += count;
    }
  }
  return s;
}

// BLEU-4 from aggregated statistics, scaled to [0, 100]. `exp_smoothing`
// with `effective_order` gives the usual sentence-level variant.
inline double BleuFromStats(const BleuStats &s, bool exp_smoothing = false,
                            bool effective_order = false) {
  double bp = 1.0;
  if (s.hyp_len < s.ref_len) {
    bp = s.hyp_len > 0 ? std::exp(1.0 - static_cast<double>(s.ref_len) /
                                            static_cast<double>(s.hyp_len))
                       : 0.0;
  }
  bool any = false;
  for (size_t m : s.matches) any = any || m > 0;
  if (!any) return 0.0;

  std::array<double, 4> prec{};
  size_t order = 4;
  double smooth = 1.0;
  for (size_t n = 0; n < 4; ++n) {
    if (s.totals[n] == 0) break;
    if (effective_order) order = n + 1;
    if (s.matches[n] == 0) {
      if (exp_smoothing) {
        smooth *= 2.0;
        prec[n] = 1.0 / (smooth * static_cast<double>(s.totals[n]));
      }
    } else {
      prec[n] = static_cast<double>(s.matches[n]) / static_cast<double>(s.totals[n]);
    }
  }
  double log_sum = 0.0;
  for (size_t n = 0; n < order; ++n) {
    if (prec[n] <= 0.0) return 0.0;
    log_sum += std::log(prec[n]);
  }
  return 100.0 * bp * std::exp(log_sum / static_cast<double>(order));
}

enum class SelfBleuMode { kCorpus, kSentenceMean };

// Self-BLEU: sentence a of each pair is the hypothesis, sentence b the single
// reference, whitespace tokens. Corpus mode aggregates clipped counts before
// computing precisions, no smoothing.
inline double SelfBleu(const std::vector<TextPair> &pairs,
                       SelfBleuMode mode = SelfBleuMode::kCorpus) {
  if (pairs.empty()) throw DataError("self_bleu needs at least one pair");
  if (mode == SelfBleuMode::kCorpus) {
    BleuStats total;
    for (const auto &p : pairs) total += ComputeBleuStats(SplitWhitespace(p.a), SplitWhitespace(p.b));
    return BleuFromStats(total);
  }
  double sum = 0.0;
  for (const auto &p : pairs) {
    sum += BleuFromStats(ComputeBleuStats(SplitWhitespace(p.a), SplitWhitespace(p.b)), true, true);
  }
  return sum / static_cast<double>(pairs.size());
}

struct DatasetStats {
  size_t pair_count = 0;
  double mean_word_len = 0.0;
  double mean_char_len = 0.0;
  double self_bleu = 0.0;
};

inline size_t Utf8Length(std::string_view s) {
  size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

// Mean word and character length over all 2n sentences.
inline DatasetStats LengthStats(const std::vector<TextPair> &pairs) {
  if (pairs.empty()) throw DataError("length_stats needs at least one pair");
  DatasetStats s;
  s.pair_count = pairs.size();
  double words = 0.0, chars = 0.0;
  for (const auto &p : pairs) {
    words += static_cast<double>(CountTokens(p.a) + CountTokens(p.b));
    chars += static_cast<double>(Utf8Length(p.a) + Utf8Length(p.b));
  }
  s.mean_word_len = words / (2.0 * static_cast<double>(pairs.size()));
  s.mean_char_len = chars / (2.0 * static_cast<double>(pairs.size()));
  return s;
}

inline DatasetStats ComputeDatasetStats(const std::vector<TextPair> &pairs,
                                        SelfBleuMode mode = SelfBleuMode::kCorpus) {
  DatasetStats s = LengthStats(pairs);
  s.self_bleu = SelfBleu(pairs, mode);
  return s;
}

// Reads aligned sentence pairs from a released parallel dataset directory.
// Every "<name>.src" file with a sibling "<name>.tgt" contributes its lines
// pairwise; two-column "*.tsv" files contribute one pair per line. Files are
// visited in path order so results do not depend on directory listing order.
inline std::vector<TextPair> LoadParallelPairs(const fs::path &dir) {
  if (!fs::is_directory(dir)) throw ConfigError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto &e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<TextPair> out;
  for (const fs::path &f : files) {
    if (f.extension() == ".src") {
      fs::path tgt = f;
      tgt.replace_extension(".tgt");
      if (!fs::exists(tgt)) continue;
      std::vector<std::string> a, b;
      ForEachLine(f, [&](size_t, const std::string &l) { a.push_back(std::string(Trim(l))); });
      ForEachLine(tgt, [&](size_t, const std::string &l) { b.push_back(std::string(Trim(l))); });
      if (a.size() != b.size()) {
        throw DataError("line count mismatch between " + f.string() + " and " + tgt.string());
      }
      for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i].empty() && !b[i].empty()) out.push_back({a[i], b[i]});
      }
    } else if (f.extension() == ".tsv") {
      ForEachLine(f, [&](size_t, const std::string &l) {
        const size_t tab = l.find('\t');
        if (tab == std::string::npos) return;
        std::string a(Trim(std::string_view(l).substr(0, tab)));
        std::string b(Trim(std::string_view(l).substr(tab + 1)));
        if (!a.empty() && !b.empty()) out.push_back({std::move(a), std::move(b)});
      });
    }
  }
  return out;
}

// One row of the statistics table: Name, Genre, Size, Gold Size, Len,
// Char Len, Self-BLEU.
struct StatsRow {
  std::string name;
  std::string genre;
  size_t size = 0;
  DatasetStats gold;
};

inline std::string FormatStatsTable(const std::vector<StatsRow> &rows) {
  std::ostringstream out;
  out << std::left << std::setw(20) << "Name" << std::setw(12) << "Genre" << std::right
      << std::setw(14) << "Size (pairs)" << std::setw(19) << "Gold Size (pairs)" << std::setw(8)
      << "Len" << std::setw(10) << "Char Len" << std::setw(11) << "Self-BLEU" << '\n';
  out << std::fixed << std::setprecision(2);
  for (const auto &r : rows) {
    out << std::left << std::setw(20) << r.name << std::setw(12) << r.genre << std::right
        << std::setw(14) << r.size << std::setw(19) << r.gold.pair_count << std::setw(8)
        << r.gold.mean_word_len << std::setw(10) << r.gold.mean_char_len << std::setw(11)
        << r.gold.self_bleu << '\n';
  }
  return out.str();
}

struct SplitRatios {
  double train = 0.6;
  double valid = 0.2;
  double test = 0.2;
};

template <typename T>
struct DatasetSplit {
  std::vector<T> train;
  std::vector<T> valid;
  std::vector<T> test;
};

// Seeded shuffle, then floor-allocated valid/test sizes; the remainder goes
// to train.
template <typename T>
DatasetSplit<T> SplitDataset(const std::vector<T> &items, const SplitRatios &r, uint64_t seed) {
  if (r.train < 0 || r.valid < 0 || r.test < 0 ||
      std::abs(r.train + r.valid + r.test - 1.0) > 1e-9) {
    throw ConfigError("split ratios must be non-negative and sum to 1");
  }
  std::vector<size_t> idx(items.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Rng rng(seed);
  rng.Shuffle(idx);
  const double n = static_cast<double>(items.size());
  const size_t n_valid = static_cast<size_t>(std::floor(r.valid * n));
  const size_t n_test = static_cast<size_t>(std::floor(r.test * n));
  const size_t n_train = items.size() - n_valid - n_test;
  DatasetSplit<T> out;
  for (size_t k = 0; k < idx.size(); ++k) {
    const T &item = items[idx[k]];
    if (k < n_train) out.train.push_back(item);
    else if (k < n_train + n_valid) out.valid.push_back(item);
    else out.test.push_back(item);
  }
  return out;
}

// Paraphrase phenomenon categories, in table order.
inline constexpr std::array<const char *, 6> kPhenomena = {"Synonym", "Voice",      "Word-Form",
                                                           "Break",   "Definition", "Structure"};
inline constexpr std::array<const char *, 6> kPhenomenaShort = {"Syn",   "Voice", "Form",
                                                                "Break", "Def",   "Struct"};

using PhenomenonCounts = std::array<int, 6>;

inline std::array<double, 6> PhenomenonMeans(const std::vector<PhenomenonCounts> &labelled) {
  if (labelled.empty()) throw DataError("no labelled pairs");
  std::array<double, 6> means{};
  for (const auto &c : labelled) {
    for (size_t k = 0; k < 6; ++k) {
      if (c[k] < 0) throw DataError("phenomenon counts must be non-negative");
      means[k] += c[k];
    }
  }
  for (double &m : means) m /= static_cast<double>(labelled.size());
  return means;
}

inline std::string FormatPhenomenonTable(
    const std::vector<std::pair<std::string, std::array<double, 6>>> &rows) {
  std::ostringstream out;
  out << std::left << std::setw(20) << "Name" << std::right;
  for (const char *h : kPhenomenaShort) out << std::setw(8) << h;
  out << '\n' << std::fixed << std::setprecision(2);
  for (const auto &[name, means] : rows) {
    out << std::left << std::setw(20) << name << std::right;
    for (double m : means) out << std::setw(8) << m;
    out << '\n';
  }
  return out.str();
}

}  // namespace paramine

#endif  // PARAMINE_STATS_HPP_
