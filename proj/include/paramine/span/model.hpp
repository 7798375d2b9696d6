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

#ifndef PARAMINE_SPAN_MODEL_HPP_
#define PARAMINE_SPAN_MODEL_HPP_

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>
#include <vector>

#include "paramine/encoder.hpp"
#include "paramine/error.hpp"
#include "paramine/lexicon.hpp"
#include "paramine/span/pseudo.hpp"
#include "paramine/util/io.hpp"
#include "paramine/util/log.hpp"
#include "paramine/util/rng.hpp"

namespace paramine {

inline constexpr size_t kTokenFeatures = 29;
inline constexpr size_t kGlobalFeatures = 8;
inline constexpr size_t kGlobalHidden = 16;

struct SpanFeatures {
  std::vector<std::array<double, kTokenFeatures>> tokens;  // one row per input2 token
  std::array<double, kGlobalFeatures> global{};
};

// Alignment features between input1 (the short sentence) and each input2
// token, computed from a frozen encoder's static and contextual states.
class SpanFeaturizer {
 public:
  SpanFeaturizer(const Encoder &encoder, size_t layer) : encoder_(encoder), layer_(layer) {}

  const Encoder &encoder() const { return encoder_; }
  size_t layer() const { return layer_; }

  SpanFeatures Compute(const std::vector<std::string> &t1,
                       const std::vector<std::string> &t2) const {
    if (t1.empty() || t2.empty()) throw DataError("span features need two non-empty inputs");
    const size_t n1 = t1.size(), n2 = t2.size();
    const TokenMatrix a0 = encoder_.TokenStates(t1, 0), h0 = encoder_.TokenStates(t2, 0);
    const TokenMatrix ac = encoder_.TokenStates(t1, layer_), hc = encoder_.TokenStates(t2, layer_);

    auto cos = [](std::span<const float> x, std::span<const float> y) {
      const double nx = Norm(x), ny = Norm(y);
      return nx == 0.0 || ny == 0.0 ? 0.0 : Dot(x, y) / (nx * ny);
    };

    std::unordered_set<std::string> keys1;
    for (const auto &t : t1) keys1.insert(LexicalKey(t));

    std::vector<double> m0(n2, -1.0), mc(n2, -1.0), m0c(n2), pos(n2, 0.0);
    std::vector<size_t> arg(n2, 0);
    std::vector<double> a_best(n1, -1.0), a_best_c(n1, -1.0);
    std::vector<bool> stop(n2);
    for (size_t i = 0; i < n2; ++i) {
      for (size_t j = 0; j < n1; ++j) {
        const double s0 = cos(h0.row(i), a0.row(j));
        const double sc = cos(hc.row(i), ac.row(j));
        if (s0 > m0[i]) {
          m0[i] = s0;
          arg[i] = j;
        }
        mc[i] = std::max(mc[i], sc);
        a_best[j] = std::max(a_best[j], s0);
        a_best_c[j] = std::max(a_best_c[j], sc);
      }
      stop[i] = IsStopword(LexicalKey(t2[i]));
      m0c[i] = stop[i] ? 0.0 : m0[i];
      pos[i] = n1 > 1 ? static_cast<double>(arg[i]) / static_cast<double>(n1 - 1) : 0.0;
    }

    auto at = [&](const std::vector<double> &v, long i) {
      return i < 0 || i >= static_cast<long>(n2) ? 0.0 : v[static_cast<size_t>(i)];
    };
    auto window_mean = [&](long from, long to) {  // inclusive, zero padded
      double s = 0.0;
      for (long k = from; k <= to; ++k) s += at(m0c, k);
      return s / static_cast<double>(to - from + 1);
    };
    auto ends_sentence = [&](long i) {
      if (i < 0 || i >= static_cast<long>(n2)) return 0.0;
      const std::string &t = t2[static_cast<size_t>(i)];
      return !t.empty() && IsEndingPunct(t.back()) ? 1.0 : 0.0;
    };

    // Lengths of the runs of aligned tokens (static similarity above 0.5)
    // ending at / starting from each position.
    std::vector<double> run_left(n2, 0.0), run_right(n2, 0.0);
    for (size_t u = 0; u < n2; ++u) {
      const bool hit = m0[u] > 0.5;
      run_left[u] = hit ? (u > 0 ? run_left[u - 1] : 0.0) + 1.0 : 0.0;
    }
    for (size_t u = n2; u-- > 0;) {
      const bool hit = m0[u] > 0.5;
      run_right[u] = hit ? (u + 1 < n2 ? run_right[u + 1] : 0.0) + 1.0 : 0.0;
    }
    const double inv_n1 = 1.0 / static_cast<double>(n1);

    SpanFeatures f;
    f.tokens.resize(n2);
    for (size_t u = 0; u < n2; ++u) {
      const long i = static_cast<long>(u);
      auto &x = f.tokens[u];
      x[0] = m0[u];
      x[1] = mc[u];
      x[2] = m0c[u];
      x[3] = keys1.count(LexicalKey(t2[u])) ? 1.0 : 0.0;
      x[4] = pos[u];
      x[5] = arg[u] == 0 ? m0[u] : 0.0;
      x[6] = arg[u] + 1 == n1 ? m0[u] : 0.0;
      x[7] = cos(h0.row(u), a0.row(0));
      x[8] = cos(h0.row(u), a0.row(n1 - 1));
      x[9] = at(m0, i - 1);
      x[10] = at(m0, i + 1);
      x[11] = at(m0, i - 2);
      x[12] = at(m0, i + 2);
      x[13] = window_mean(i - 3, i - 1);
      x[14] = window_mean(i + 1, i + 3);
      x[15] = u == 0 ? 1.0 : 0.0;
      x[16] = u + 1 == n2 ? 1.0 : 0.0;
      x[17] = ends_sentence(i - 1);
      x[18] = ends_sentence(i);
      x[19] = n2 > 1 ? static_cast<double>(u) / static_cast<double>(n2 - 1) : 0.0;
      x[20] = stop[u] ? 1.0 : 0.0;
      x[21] = at(pos, i - 1);
      x[22] = at(pos, i + 1);
      x[23] = window_mean(i - 6, i - 1);
      x[24] = window_mean(i + 1, i + 6);
      x[25] = at(mc, i - 1);
      x[26] = at(mc, i + 1);
      x[27] = std::min(1.0, at(run_left, i - 1) * inv_n1);
      x[28] = std::min(1.0, at(run_right, i + 1) * inv_n1);
    }

    double max_m0c = 0.0, mean_m0c = 0.0, max_window = 0.0;
    for (size_t u = 0; u < n2; ++u) {
      max_m0c = std::max(max_m0c, m0c[u]);
      mean_m0c += m0c[u];
      max_window = std::max(max_window, window_mean(static_cast<long>(u) - 2,
                                                    static_cast<long>(u) + 2));
    }
    mean_m0c /= static_cast<double>(n2);
    double covered = 0.0, mean_best = 0.0, mean_best_c = 0.0;
    for (size_t j = 0; j < n1; ++j) {
      covered += a_best[j] > 0.75 ? 1.0 : 0.0;
      mean_best += a_best[j];
      mean_best_c += a_best_c[j];
    }
    f.global = {1.0,
                max_m0c,
                mean_m0c,
                covered / static_cast<double>(n1),
                mean_best / static_cast<double>(n1),
                max_window,
                std::min(1.0, static_cast<double>(n1) / static_cast<double>(n2)),
                mean_best_c / static_cast<double>(n1)};
    return f;
  }

 private:
  const Encoder &encoder_;
  size_t layer_;
};

// Best span in input2 token coordinates, or no-answer.
struct SpanPrediction {
  bool no_answer = true;
  size_t start = 0;
  size_t end = 0;
  double margin = 0.0;  // best span score minus null score
};

inline Json SpanConfigToJson(const SpanModelConfig &c) {
  return Json{{"max_sequence_length", c.max_sequence_length},
              {"learning_rate", c.learning_rate},
              {"epochs", c.epochs},
              {"batch_size", c.batch_size},
              {"hidden_units", c.hidden_units},
              {"seed", c.seed},
              {"p_c", c.p_c},
              {"p_b", c.p_b},
              {"p_d", c.p_d},
              {"no_answer_mode",
               c.no_answer_mode == NoAnswerMode::kSentinel ? "sentinel" : "resample"},
              {"both_orientations", c.both_orientations},
              {"held_out_fraction", c.held_out_fraction},
              {"min_span_tokens", c.min_span_tokens},
              {"feature_layer", c.feature_layer}};
}

inline SpanModelConfig SpanConfigFromJson(const Json &j, SpanModelConfig c = {}) {
  c.max_sequence_length = j.value("max_sequence_length", c.max_sequence_length);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.epochs = j.value("epochs", c.epochs);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.hidden_units = j.value("hidden_units", c.hidden_units);
  c.seed = j.value("seed", c.seed);
  c.p_c = j.value("p_c", c.p_c);
  c.p_b = j.value("p_b", c.p_b);
  c.p_d = j.value("p_d", c.p_d);
  if (j.contains("no_answer_mode")) {
    const std::string m = j.at("no_answer_mode").get<std::string>();
    if (m == "sentinel") c.no_answer_mode = NoAnswerMode::kSentinel;
    else if (m == "resample") c.no_answer_mode = NoAnswerMode::kResample;
    else throw ConfigError("no_answer_mode must be 'sentinel' or 'resample'");
  }
  c.both_orientations = j.value("both_orientations", c.both_orientations);
  c.held_out_fraction = j.value("held_out_fraction", c.held_out_fraction);
  c.min_span_tokens = j.value("min_span_tokens", c.min_span_tokens);
  c.feature_layer = j.value("feature_layer", c.feature_layer);
  return c;
}

// Two position-scoring heads (start, end) over input2 tokens sharing one
// tanh hidden layer, plus a null head over global features that scores the
// sequence-start sentinel.
class SpanModel {
 public:
  SpanModel() = default;
  SpanModel(const SpanModelConfig &cfg, std::string encoder_tag)
      : cfg_(cfg), encoder_tag_(std::move(encoder_tag)), hidden_(cfg.hidden_units) {
    params_.assign(NumParams(), 0.0);
  }

  const SpanModelConfig &config() const { return cfg_; }
  const std::string &encoder_tag() const { return encoder_tag_; }
  std::vector<double> &params() { return params_; }
  const std::vector<double> &params() const { return params_; }

  size_t NumParams() const {
    return hidden_ * kTokenFeatures + hidden_ * 3 + kGlobalHidden * kGlobalFeatures +
           kGlobalHidden * 3;
  }

  void Initialize(Rng &rng) {
    params_.assign(NumParams(), 0.0);
    const double tok_scale = 1.0 / std::sqrt(static_cast<double>(kTokenFeatures));
    const double glob_scale = 1.0 / std::sqrt(static_cast<double>(kGlobalFeatures));
    for (size_t k = 0; k < hidden_ * kTokenFeatures; ++k) params_[W() + k] = rng.Normal() * tok_scale;
    for (size_t k = 0; k < hidden_; ++k) {
      params_[Us() + k] = rng.Normal() * 0.1;
      params_[Ue() + k] = rng.Normal() * 0.1;
    }
    for (size_t k = 0; k < kGlobalHidden * kGlobalFeatures; ++k) {
      params_[G() + k] = rng.Normal() * glob_scale;
    }
    for (size_t k = 0; k < kGlobalHidden; ++k) {
      params_[Vs() + k] = rng.Normal() * 0.1;
      params_[Ve() + k] = rng.Normal() * 0.1;
    }
  }

  // Scores for the null position (index 0) followed by each input2 token.
  struct Forward {
    std::vector<double> start;
    std::vector<double> end;
    std::vector<std::vector<double>> hidden;  // per token
    std::vector<double> global_hidden;
  };

  Forward Run(const SpanFeatures &f) const {
    Forward out;
    const size_t n = f.tokens.size();
    out.start.resize(n + 1);
    out.end.resize(n + 1);
    out.hidden.assign(n, std::vector<double>(hidden_));
    out.global_hidden.resize(kGlobalHidden);
    double s0 = 0.0, e0 = 0.0;
    for (size_t h = 0; h < kGlobalHidden; ++h) {
      double z = params_[Bg() + h];
      for (size_t k = 0; k < kGlobalFeatures; ++k) {
        z += params_[G() + h * kGlobalFeatures + k] * f.global[k];
      }
      const double a = std::tanh(z);
      out.global_hidden[h] = a;
      s0 += params_[Vs() + h] * a;
      e0 += params_[Ve() + h] * a;
    }
    out.start[0] = s0;
    out.end[0] = e0;
    for (size_t i = 0; i < n; ++i) {
      double s = 0.0, e = 0.0;
      for (size_t h = 0; h < hidden_; ++h) {
        double z = params_[B() + h];
        const double *w = &params_[W() + h * kTokenFeatures];
        for (size_t k = 0; k < kTokenFeatures; ++k) z += w[k] * f.tokens[i][k];
        const double a = std::tanh(z);
        out.hidden[i][h] = a;
        s += params_[Us() + h] * a;
        e += params_[Ue() + h] * a;
      }
      out.start[i + 1] = s;
      out.end[i + 1] = e;
    }
    return out;
  }

  // Joint argmax of start + end subject to start <= end, against the null
  // score.
  SpanPrediction Predict(const SpanFeatures &f) const {
    const Forward fw = Run(f);
    const size_t n = f.tokens.size();
    SpanPrediction best;
    double best_score = -std::numeric_limits<double>::infinity();
    size_t best_start_so_far = 1;
    for (size_t j = 1; j <= n; ++j) {
      if (fw.start[j] > fw.start[best_start_so_far]) best_start_so_far = j;
      const double score = fw.start[best_start_so_far] + fw.end[j];
      if (score > best_score) {
        best_score = score;
        best.start = best_start_so_far - 1;
        best.end = j - 1;
      }
    }
    const double null_score = fw.start[0] + fw.end[0];
    best.margin = best_score - null_score;
    best.no_answer = null_score >= best_score;
    return best;
  }

  // Summed start/end cross-entropy; accumulates the gradient into `grad`.
  double LossAndGradient(const SpanFeatures &f, size_t gold_start, size_t gold_end,
                         std::vector<double> &grad) const {
    const Forward fw = Run(f);
    const size_t n = f.tokens.size();
    auto softmax_grad = [](const std::vector<double> &s, size_t gold, std::vector<double> &d) {
      const double mx = *std::max_element(s.begin(), s.end());
      double z = 0.0;
      for (double v : s) z += std::exp(v - mx);
      d.resize(s.size());
      for (size_t k = 0; k < s.size(); ++k) d[k] = std::exp(s[k] - mx) / z;
      const double loss = -(s[gold] - mx - std::log(z));
      d[gold] -= 1.0;
      return loss;
    };
    std::vector<double> ds, de;
    double loss = softmax_grad(fw.start, gold_start, ds);
    loss += softmax_grad(fw.end, gold_end, de);

    for (size_t h = 0; h < kGlobalHidden; ++h) {
      const double a = fw.global_hidden[h];
      grad[Vs() + h] += ds[0] * a;
      grad[Ve() + h] += de[0] * a;
      const double dz = (ds[0] * params_[Vs() + h] + de[0] * params_[Ve() + h]) * (1.0 - a * a);
      grad[Bg() + h] += dz;
      for (size_t k = 0; k < kGlobalFeatures; ++k) {
        grad[G() + h * kGlobalFeatures + k] += dz * f.global[k];
      }
    }
    for (size_t i = 0; i < n; ++i) {
      const double gs = ds[i + 1], ge = de[i + 1];
      for (size_t h = 0; h < hidden_; ++h) {
        const double a = fw.hidden[i][h];
        grad[Us() + h] += gs * a;
        grad[Ue() + h] += ge * a;
        const double dz = (gs * params_[Us() + h] + ge * params_[Ue() + h]) * (1.0 - a * a);
        grad[B() + h] += dz;
        double *gw = &grad[W() + h * kTokenFeatures];
        for (size_t k = 0; k < kTokenFeatures; ++k) gw[k] += dz * f.tokens[i][k];
      }
    }
    return loss;
  }

  Json WeightsToJson() const { return Json{{"hidden_units", hidden_}, {"params", params_}}; }

  void LoadWeights(const Json &j) {
    hidden_ = j.at("hidden_units").get<size_t>();
    cfg_.hidden_units = hidden_;
    params_ = j.at("params").get<std::vector<double>>();
    if (params_.size() != NumParams()) throw ConfigError("span model weights have wrong size");
  }

 private:
  // Parameter layout offsets.
  size_t W() const { return 0; }
  size_t B() const { return hidden_ * kTokenFeatures; }
  size_t Us() const { return B() + hidden_; }
  size_t Ue() const { return Us() + hidden_; }
  size_t G() const { return Ue() + hidden_; }
  size_t Bg() const { return G() + kGlobalHidden * kGlobalFeatures; }
  size_t Vs() const { return Bg() + kGlobalHidden; }
  size_t Ve() const { return Vs() + kGlobalHidden; }

  SpanModelConfig cfg_;
  std::string encoder_tag_;
  size_t hidden_ = 0;
  std::vector<double> params_;
};

// A featurized pseudo example with gold positions in softmax coordinates
// (0 = null, i + 1 = input2 token i).
struct PreparedExample {
  SpanFeatures features;
  size_t gold_start = 0;
  size_t gold_end = 0;
  bool has_answer = false;
};

// Applies the truncation policy (cut input2's tail to fit the sequence
// budget); returns false when the example must be dropped.
inline bool PrepareExample(const PseudoExample &ex, const SpanFeaturizer &featurizer,
                           size_t max_sequence_length, PreparedExample &out) {
  const auto t1 = SplitWhitespace(ex.input1);
  auto t2 = SplitWhitespace(ex.input2);
  if (t1.empty() || t2.empty()) return false;
  if (t1.size() + 3 > max_sequence_length) return false;
  const size_t budget = max_sequence_length - t1.size() - 2;
  if (t2.size() > budget) t2.resize(budget);
  const size_t off = Input2Offset(t1.size());
  out.has_answer = ex.has_answer;
  if (ex.has_answer) {
    if (ex.span_start < off || ex.span_end < ex.span_start) return false;
    if (ex.span_end - off >= t2.size()) return false;
    out.gold_start = ex.span_start - off + 1;
    out.gold_end = ex.span_end - off + 1;
  } else {
    out.gold_start = out.gold_end = 0;
  }
  out.features = featurizer.Compute(t1, t2);
  return true;
}

struct TrainReport {
  size_t train_examples = 0;
  size_t held_out_examples = 0;
  size_t dropped = 0;
  size_t held_out_answerable = 0;
  size_t held_out_unanswerable = 0;
  double exact_span_accuracy = 0.0;  // over held-out examples with an answer
  double no_answer_accuracy = 0.0;   // over held-out examples without one
  double exact_match = 0.0;          // over all held-out examples
  std::vector<double> epoch_losses;
};

inline Json TrainReportToJson(const TrainReport &r) {
  return Json{{"train_examples", r.train_examples},
              {"held_out_examples", r.held_out_examples},
              {"dropped", r.dropped},
              {"held_out_answerable", r.held_out_answerable},
              {"held_out_unanswerable", r.held_out_unanswerable},
              {"exact_span_accuracy", r.exact_span_accuracy},
              {"no_answer_accuracy", r.no_answer_accuracy},
              {"exact_match", r.exact_match},
              {"epoch_losses", r.epoch_losses}};
}

struct HeldOutMetrics {
  size_t answerable = 0, unanswerable = 0, span_hits = 0, null_hits = 0;
};

inline HeldOutMetrics EvaluateHeldOut(const SpanModel &model,
                                      const std::vector<PreparedExample> &examples) {
  HeldOutMetrics m;
  for (const auto &ex : examples) {
    const SpanPrediction p = model.Predict(ex.features);
    if (ex.has_answer) {
      ++m.answerable;
      if (!p.no_answer && p.start + 1 == ex.gold_start && p.end + 1 == ex.gold_end) ++m.span_hits;
    } else {
      ++m.unanswerable;
      if (p.no_answer) ++m.null_hits;
    }
  }
  return m;
}

struct TrainedSpanModel {
  SpanModel model;
  TrainReport report;
};

// Trains the span heads with Adam on summed start/end cross-entropy. The
// last `held_out_fraction` of a seeded shuffle is held out for the report.
inline TrainedSpanModel TrainSpanModel(const std::vector<PseudoExample> &data,
                                       const SpanFeaturizer &featurizer,
                                       const SpanModelConfig &cfg) {
  cfg.Validate();
  if (data.empty()) throw DataError("no training examples");
  Rng rng(cfg.seed);

  std::vector<size_t> order(data.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.Shuffle(order);
  const size_t held = static_cast<size_t>(std::floor(cfg.held_out_fraction *
                                                     static_cast<double>(data.size())));
  TrainReport report;
  std::vector<PreparedExample> train, heldout;
  for (size_t k = 0; k < order.size(); ++k) {
    PreparedExample p;
    if (!PrepareExample(data[order[k]], featurizer, cfg.max_sequence_length, p)) {
      ++report.dropped;
      continue;
    }
    (k + held >= order.size() ? heldout : train).push_back(std::move(p));
  }
  if (train.empty()) throw DataError("no trainable examples after truncation");
  report.train_examples = train.size();
  report.held_out_examples = heldout.size();

  SpanModel model(cfg, featurizer.encoder().tag() + "@" + std::to_string(featurizer.layer()));
  model.Initialize(rng);

  std::vector<double> &w = model.params();
  std::vector<double> grad(w.size()), m1(w.size(), 0.0), m2(w.size(), 0.0);
  const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  size_t step = 0;
  std::vector<size_t> idx(train.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;

  for (size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.Shuffle(idx);
    double total = 0.0;
    for (size_t b = 0; b < idx.size(); b += cfg.batch_size) {
      const size_t e = std::min(idx.size(), b + cfg.batch_size);
      std::fill(grad.begin(), grad.end(), 0.0);
      for (size_t k = b; k < e; ++k) {
        const PreparedExample &ex = train[idx[k]];
        total += model.LossAndGradient(ex.features, ex.gold_start, ex.gold_end, grad);
      }
      ++step;
      const double scale = 1.0 / static_cast<double>(e - b);
      const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
      for (size_t k = 0; k < w.size(); ++k) {
        const double g = grad[k] * scale;
        m1[k] = beta1 * m1[k] + (1.0 - beta1) * g;
        m2[k] = beta2 * m2[k] + (1.0 - beta2) * g * g;
        w[k] -= cfg.learning_rate * (m1[k] / c1) / (std::sqrt(m2[k] / c2) + eps);
      }
    }
    report.epoch_losses.push_back(total / static_cast<double>(train.size()));
    PARAMINE_LOG(Debug) << "span model epoch " << epoch + 1 << " loss "
                        << report.epoch_losses.back();
  }

  const HeldOutMetrics m = EvaluateHeldOut(model, heldout);
  report.held_out_answerable = m.answerable;
  report.held_out_unanswerable = m.unanswerable;
  report.exact_span_accuracy =
      m.answerable ? static_cast<double>(m.span_hits) / static_cast<double>(m.answerable) : 0.0;
  report.no_answer_accuracy =
      m.unanswerable ? static_cast<double>(m.null_hits) / static_cast<double>(m.unanswerable)
                     : 0.0;
  report.exact_match = heldout.empty() ? 0.0
                                       : static_cast<double>(m.span_hits + m.null_hits) /
                                             static_cast<double>(heldout.size());
  return {std::move(model), std::move(report)};
}

// Checkpoint directory: manifest.json (config, seed, encoder tag, report)
// and weights.json.
inline void SaveSpanCheckpoint(const fs::path &dir, const SpanModel &model,
                               const TrainReport &report) {
  fs::create_directories(dir);
  const Json manifest{{"format", "paramine-span-v1"},
                      {"encoder_tag", model.encoder_tag()},
                      {"seed", model.config().seed},
                      {"config", SpanConfigToJson(model.config())},
                      {"report", TrainReportToJson(report)}};
  AtomicWriteFile(dir / "manifest.json", manifest.dump(2) + "\n");
  AtomicWriteFile(dir / "weights.json", model.WeightsToJson().dump() + "\n");
}

inline SpanModel LoadSpanCheckpoint(const fs::path &dir) {
  const Json manifest = Json::parse(ReadFile(dir / "manifest.json"));
  if (manifest.value("format", std::string()) != "paramine-span-v1") {
    throw ConfigError("unsupported span checkpoint: " + dir.string());
  }
  SpanModel model(SpanConfigFromJson(manifest.at("config")),
                  manifest.at("encoder_tag").get<std::string>());
  model.LoadWeights(Json::parse(ReadFile(dir / "weights.json")));
  return model;
}

}  // namespace paramine

#endif  // PARAMINE_SPAN_MODEL_HPP_
