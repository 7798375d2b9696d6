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

#ifndef PARAMINE_SYNTH_HPP_
#define PARAMINE_SYNTH_HPP_

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "paramine/lexicon.hpp"
#include "paramine/span/pseudo.hpp"
#include "paramine/util/io.hpp"
#include "paramine/util/rng.hpp"
#include "paramine/util/text.hpp"

namespace paramine::synth {

// Slot values for scientific-prose templates.
struct Fact {
  std::string task;
  std::string method;
  std::string dataset;
  std::string metric;
  std::string feature;
  std::string author;
  int number = 0;
};

// Template families. Every family has several surface variants that express
// the same content; placeholders are {task} {method} {dataset} {metric}
// {feature} {author} {number}.
inline const std::vector<std::vector<std::string>> &TemplateFamilies() {
  static const std::vector<std::vector<std::string>> families = {
      {"we propose a novel {method} for {task} that improves the performance on {dataset}.",
       "a novel {method} for {task} is proposed in this paper, which improves the performance "
       "on {dataset}.",
       "in this paper we introduce a new {method} that boosts the accuracy of {task} on "
       "{dataset}."},
      {"our {method} achieves significant improvements over previous baselines on {dataset}.",
       "on {dataset}, the {method} we present obtains substantial gains over prior baselines.",
       "compared with existing baselines, our {method} yields considerable improvements on "
       "{dataset}."},
      {"the results show that the {method} is effective for {task} in many settings.",
       "our findings demonstrate that the {method} works well for {task} across many settings.",
       "in many settings, the {method} proves to be effective for {task} according to our "
       "results."},
      {"we use the {method} to obtain {feature} for each sentence in the corpus.",
       "for every sentence in the corpus, {feature} are obtained with the {method}.",
       "the {method} is employed to extract {feature} from each sentence of the corpus."},
      {"in this paper we investigate how the {method} can be applied to {task}.",
       "this work studies the application of the {method} to {task}.",
       "we explore whether the {method} can be used for {task} in this study."},
      {"experiments on {dataset} demonstrate that our model outperforms strong baselines in "
       "terms of {metric}.",
       "our model surpasses strong baselines on {dataset} with respect to {metric}, as the "
       "experiments show.",
       "as shown by experiments on {dataset}, the proposed model beats strong baselines "
       "measured by {metric}."},
      {"{task} is an important problem that has attracted much attention in recent years.",
       "in recent years, {task} has received a lot of attention as a crucial problem.",
       "much recent attention has been paid to {task}, which is an essential problem."},
      {"we train the {method} on {dataset} and evaluate it with {metric}.",
       "the {method} is trained on {dataset} and evaluated using {metric}.",
       "after training the {method} on {dataset}, we assess it with {metric}."},
      {"the main limitation of the {method} is that it requires large amounts of labeled data.",
       "a key drawback of the {method} is its need for large quantities of labeled data.",
       "the {method} is limited mainly because it needs a large amount of annotated data."},
      {"we further analyze the errors made by the {method} on {task}.",
       "an analysis of the errors that the {method} makes on {task} is also given.",
       "additionally, we examine the mistakes of the {method} on {task}."},
      {"{feature} play a crucial role in the success of the {method}.",
       "the success of the {method} relies heavily on {feature}.",
       "without {feature}, the {method} would not be nearly as successful."},
      {"future work will extend the {method} to other languages and domains.",
       "in the future we plan to apply the {method} to further languages and domains.",
       "extending the {method} to more languages and domains is left for future work."},
  };
  return families;
}

// Sentences for sections that never pair (method, results): mostly numbers.
inline const std::vector<std::string> &OtherTemplates() {
  static const std::vector<std::string> t = {
      "the {method} reaches {number} {metric} on the development set of {dataset}.",
      "table {number} reports the {metric} of each configuration on {dataset}.",
      "we set the learning rate to 0.{number} and train for {number} epochs.",
      "the hidden size of the {method} is {number} and the dropout rate is 0.{number}.",
      "on {dataset} the {method} obtains {number} points of {metric}.",
      "figure {number} plots {metric} against the size of the training data.",
      "all models are trained on a single gpu for {number} hours.",
      "the vocabulary of {dataset} contains {number} thousand words.",
  };
  return t;
}

// Generic filler prose with little slot overlap, used as distractors.
inline const std::vector<std::string> &FillerTemplates() {
  static const std::vector<std::string> t = {
      "the annotation guidelines were revised twice after a pilot study with {number} volunteers.",
      "code and data will be released upon publication of this article.",
      "this section briefly reviews the notation used throughout the rest of the paper.",
      "we thank the anonymous reviewers for their helpful comments and suggestions.",
      "the remainder of this paper is organized as follows.",
      "each document was tokenized and lowercased before further processing.",
      "inter-annotator agreement was measured on a random sample of {number} items.",
      "the second author manually inspected the output of the tokenizer.",
      "most errors occur in long sentences with nested clauses and rare words.",
      "this observation is consistent with earlier reports in the literature.",
      "the corpus was collected from online forums between 2010 and 2015.",
      "hyperparameters were tuned by grid search on the validation portion.",
      "a detailed breakdown by category is given in the appendix.",
      "such cases are rare but have a visible impact on the final scores.",
      "the preprocessing pipeline removes duplicated documents and markup.",
      "we leave a more thorough theoretical treatment for a longer version of this paper.",
      "the test portion contains {number} documents drawn from news and blogs.",
      "at inference time the decoder runs greedily without any length penalty.",
      "this phenomenon has been noted by several authors working on low resource languages.",
      "human raters were paid an hourly wage above the local minimum.",
      "the first row of each block corresponds to the unmodified system.",
      "stop words are kept because they carry information about syntax.",
      "all significance tests use paired bootstrap resampling with {number} samples.",
      "the search space grows exponentially with the number of candidate labels.",
  };
  return t;
}

inline const std::vector<std::string> &CitationTemplates() {
  static const std::vector<std::string> t = {
      "{author} proposed a {method} for {task} that relies on {feature}.",
      "a {method} relying on {feature} was introduced by {author} for {task}.",
      "{author} presented a {method} that uses {feature} to address {task}.",
      "for {task}, {author} described a {method} built on {feature}.",
  };
  return t;
}

struct DefinitionTerm {
  std::string term;
  std::string abbreviation;
  std::vector<std::string> glosses;  // paraphrased definitions of the same concept
};

inline const std::map<std::string, std::vector<DefinitionTerm>> &DefinitionTerms() {
  static const std::map<std::string, std::vector<DefinitionTerm>> terms = {
      {"computation and language",
       {{"sentence compression",
         "",
         {"producing a shorter form of a long sentence while keeping its meaning",
          "generating a shorter version of a long sentence that keeps its meaning",
          "creating a condensed form of a long sentence while preserving its meaning"}},
        {"word sense disambiguation",
         "wsd",
         {"identifying the correct meaning of a word in a given context",
          "determining the right sense of a word in its context",
          "recognizing the proper meaning of a word within a given context"}},
        {"named entity recognition",
         "ner",
         {"locating and classifying named entities mentioned in text",
          "detecting named entities in text and assigning them to categories",
          "finding the named entities in a text and classifying them into types"}}}},
      {"machine learning",
       {{"domain adaptation",
         "",
         {"adapting a model trained on a source domain to a different target domain",
          "transferring a model learned on one domain to a different target domain",
          "adjusting a model trained on source data so that it works on a target domain"}},
        {"active learning",
         "",
         {"selecting the most informative examples for a human annotator to label",
          "choosing the most useful examples to be labeled by a human annotator",
          "picking the most informative samples for labeling by a human annotator"}},
        {"knowledge distillation",
         "kd",
         {"training a small student model to mimic a large teacher model",
          "teaching a small student network to imitate a large teacher network",
          "learning a compact student model that reproduces a large teacher model"}}}},
  };
  return terms;
}

inline const std::vector<std::string> &DefinitionFrames() {
  static const std::vector<std::string> f = {
      "{term} is the task of {gloss}.",
      "{term} is defined as the task of {gloss}.",
      "{term} refers to {gloss}.",
      "we define {term} as {gloss}.",
  };
  return f;
}

class Generator {
 public:
  explicit Generator(uint64_t seed, const Lexicon &lexicon = Lexicon::Scientific())
      : rng_(seed), lexicon_(lexicon) {}

  Rng &rng() { return rng_; }

  Fact RandomFact() {
    static const std::vector<std::string> tasks = {
        "machine translation", "dependency parsing",   "sentiment analysis",
        "question answering",  "text summarization",   "relation extraction",
        "coreference resolution", "paraphrase generation", "semantic role labeling",
        "dialogue generation", "speech recognition",   "image captioning",
        "entity linking",      "topic modeling",       "text classification"};
    static const std::vector<std::string> methods = {
        "neural network",    "attention mechanism",   "graph convolution network",
        "conditional random field", "transformer encoder", "reinforcement learning agent",
        "beam search decoder", "variational autoencoder", "recurrent network",
        "pointer network",   "memory network",        "convolutional encoder",
        "ranking model",     "latent variable model", "sequence labeling model"};
    static const std::vector<std::string> datasets = {
        "the penn treebank", "squad", "wmt 2014", "conll 2003", "the gigaword corpus",
        "ms marco", "the ontonotes corpus", "sst-2", "the wikitext benchmark",
        "the arxiv collection"};
    static const std::vector<std::string> metrics = {"bleu", "f1 score", "accuracy", "rouge",
                                                     "perplexity", "exact match"};
    static const std::vector<std::string> features = {
        "syntactic features", "word embeddings", "character features", "pos tags",
        "dependency trees", "contextual representations", "lexical features",
        "attention weights"};
    static const std::vector<std::string> authors = {
        "smith et al.", "chen and liu", "garcia et al.", "kumar et al.", "muller and weber",
        "tanaka et al.", "brown et al.", "ivanova and petrov", "okafor et al.", "nguyen et al."};
    Fact f;
    f.task = Pick(tasks);
    f.method = Pick(methods);
    f.dataset = Pick(datasets);
    f.metric = Pick(metrics);
    f.feature = Pick(features);
    f.author = Pick(authors);
    f.number = static_cast<int>(rng_.Index(90)) + 10;
    return f;
  }

  static std::string Fill(std::string tpl, const Fact &f) {
    const std::pair<const char *, std::string> slots[] = {
        {"{task}", f.task},       {"{method}", f.method},   {"{dataset}", f.dataset},
        {"{metric}", f.metric},   {"{feature}", f.feature}, {"{author}", f.author},
        {"{number}", std::to_string(f.number)}};
    for (const auto &[key, value] : slots) {
      for (size_t pos = tpl.find(key); pos != std::string::npos; pos = tpl.find(key, pos)) {
        tpl.replace(pos, std::string_view(key).size(), value);
        pos += value.size();
      }
    }
    return tpl;
  }

  // Replaces up to `count` lexicon words with a different synonym.
  std::string SwapSynonyms(const std::string &text, size_t count) {
    auto tokens = SplitWhitespace(text);
    std::vector<size_t> candidates;
    for (size_t i = 0; i < tokens.size(); ++i) {
      const auto *syn = lexicon_.Synonyms(StripTrailing(tokens[i]));
      if (syn != nullptr && syn->size() > 1) candidates.push_back(i);
    }
    rng_.Shuffle(candidates);
    for (size_t k = 0; k < candidates.size() && k < count; ++k) {
      std::string &tok = tokens[candidates[k]];
      const std::string word = StripTrailing(tok);
      const std::string tail = tok.substr(word.size());
      const auto &syn = *lexicon_.Synonyms(word);
      std::string pick = word;
      while (pick == word) pick = syn[rng_.Index(syn.size())];
      if (pick.find(' ') != std::string::npos) continue;
      tok = pick + tail;
    }
    return Join(tokens, " ");
  }

  // A sentence from a random family and variant.
  std::string RandomSentence() {
    const auto &fam = TemplateFamilies();
    const auto &f = fam[rng_.Index(fam.size())];
    return Fill(f[rng_.Index(f.size())], RandomFact());
  }

  std::string RandomFillerSentence() {
    const auto &t = FillerTemplates();
    return Fill(t[rng_.Index(t.size())], RandomFact());
  }

  std::string RandomOtherSentence() {
    const auto &t = OtherTemplates();
    return Fill(t[rng_.Index(t.size())], RandomFact());
  }

  // Paraphrase pair: two different variants of one family (or the same
  // variant with synonym swaps), both with a few synonym substitutions.
  std::pair<std::string, std::string> ParaphrasePair() {
    const auto &fam = TemplateFamilies();
    const auto &f = fam[rng_.Index(fam.size())];
    const Fact fact = RandomFact();
    const size_t va = rng_.Index(f.size());
    size_t vb = rng_.Index(f.size());
    if (rng_.Bernoulli(0.6)) vb = va;
    std::string a = SwapSynonyms(Fill(f[va], fact), rng_.Index(2));
    std::string b = SwapSynonyms(Fill(f[vb], fact), 1 + rng_.Index(2));
    if (a == b) b = SwapSynonyms(b, 2);
    return {a, b};
  }

  std::vector<SeedPair> SeedPairs(size_t n) {
    std::vector<SeedPair> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      auto [a, b] = ParaphrasePair();
      out.push_back({"seed" + std::to_string(i) + "a", a, "seed" + std::to_string(i) + "b", b});
    }
    return out;
  }

  std::vector<PoolSentence> Pool(size_t n) {
    std::vector<PoolSentence> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      const double u = rng_.Uniform();
      out.push_back({"pool" + std::to_string(i), u < 0.4   ? RandomSentence()
                                                 : u < 0.7 ? RandomFillerSentence()
                                                           : RandomOtherSentence()});
    }
    return out;
  }

  template <typename T>
  const T &Pick(const std::vector<T> &v) {
    return v[rng_.Index(v.size())];
  }

 private:
  static std::string StripTrailing(const std::string &tok) {
    size_t e = tok.size();
    while (e > 0 && std::ispunct(static_cast<unsigned char>(tok[e - 1]))) --e;
    return tok.substr(0, e);
  }

  Rng rng_;
  const Lexicon &lexicon_;
};

struct MiniCorpus {
  std::vector<Json> sentences;
  std::vector<Json> papers;
  std::vector<Json> citations;
};

// Small corpus with planted paraphrases for every channel: same-paper
// restatements across sections, abstract sentences embedded in longer
// introduction sentences, shared definitions inside a subject area, and
// several papers citing the same external work. Everything else is filler.
class MiniCorpusBuilder {
 public:
  explicit MiniCorpusBuilder(uint64_t seed) : gen_(seed) {}

  MiniCorpus Build(size_t num_papers = 20) {
    static const char *const kSubjects[] = {"computation and language", "machine learning"};
    MiniCorpus out;
    const auto &defs = DefinitionTerms();
    // Cited works shared by several papers of the corpus.
    std::vector<Fact> cited;
    for (size_t c = 0; c < 5; ++c) cited.push_back(gen_.RandomFact());

    for (size_t p = 0; p < num_papers; ++p) {
      const std::string paper_id = "P" + std::string(p < 9 ? "0" : "") + std::to_string(p + 1);
      const std::string subject = kSubjects[p % 2];
      sections_.clear();
      const Fact topic = gen_.RandomFact();
      out.papers.push_back(Json{{"paper_id", paper_id},
                                {"title", "on " + topic.method + " for " + topic.task},
                                {"subject_area", subject},
                                {"source", p % 2 == 0 ? "ACL" : "ARXIV"}});

      // Filler templates are drawn without replacement inside a paper.
      std::vector<size_t> fill(FillerTemplates().size());
      for (size_t k = 0; k < fill.size(); ++k) fill[k] = k;
      gen_.rng().Shuffle(fill);
      size_t next = 0;
      auto filler = [&] {
        return Generator::Fill(FillerTemplates()[fill[next++ % fill.size()]], gen_.RandomFact());
      };
      for (size_t k = 0; k < 4; ++k) Push("abstract", filler());
      for (size_t k = 0; k < 7; ++k) Push("introduction", filler());
      for (size_t k = 0; k < 5; ++k) Push("related work", filler());
      for (size_t k = 0; k < 8; ++k) Push("method", gen_.RandomOtherSentence());
      for (size_t k = 0; k < 7; ++k) Push("experiments", gen_.RandomOtherSentence());
      for (size_t k = 0; k < 3; ++k) Push("discussion", filler());
      for (size_t k = 0; k < 3; ++k) Push("conclusion", filler());

      // Two cross-section restatements of the paper's own claims.
      const auto &fams = TemplateFamilies();
      for (size_t k = 0; k < 2; ++k) {
        const auto &fam = fams[gen_.rng().Index(fams.size())];
        const std::string base = Generator::Fill(fam[gen_.rng().Index(fam.size())], topic);
        Insert(k == 0 ? "abstract" : "introduction", gen_.SwapSynonyms(base, 1));
        Insert(k == 0 ? "conclusion" : "discussion", gen_.SwapSynonyms(base, 1));
      }

      // A short abstract claim repeated inside a longer introduction sentence.
      {
        const auto &fam = fams[gen_.rng().Index(fams.size())];
        const std::string claim = Generator::Fill(fam[gen_.rng().Index(fam.size())], topic);
        static const char *const kLeads[] = {
            "building on a long line of earlier studies and our own preliminary experiments,",
            "motivated by the observations above and by feedback from practitioners,",
            "following the standard protocol described in the previous section of this paper,"};
        std::string restated = gen_.SwapSynonyms(claim, 1);
        Insert("abstract", claim);
        Insert("introduction", std::string(kLeads[gen_.rng().Index(3)]) + " " + restated);
      }

      // Definition of a subject-specific term in every other paper.
      if (p % 4 < 2) {
        const auto &terms = defs.at(subject);
        const DefinitionTerm &t = terms[(p / 4) % terms.size()];
        std::string gloss = t.glosses[(p / 12) % t.glosses.size()];
        if (p >= 12) gloss = gen_.SwapSynonyms(t.glosses[0], 1);
        std::string frame = DefinitionFrames()[0];
        frame.replace(frame.find("{term}"), 6, t.term);
        frame.replace(frame.find("{gloss}"), 7, gloss);
        Insert("introduction", frame);
      }

      // Citation of one of the shared works.
      const size_t c = p % cited.size();
      const std::string cite =
          gen_.SwapSynonyms(Generator::Fill(CitationTemplates()[0], cited[c]), 1);
      const std::string sid = Insert("related work", cite);
      out.citations.push_back(Json{{"citing_paper_id", paper_id},
                                   {"cited_paper_id", "EXT" + std::to_string(c + 1)},
                                   {"citing_sentence_id", paper_id + ":" + sid}});

      for (const auto &[label, texts] : sections_) {
        for (size_t i = 0; i < texts.size(); ++i) {
          out.sentences.push_back(
              Json{{"paper_id", paper_id}, {"section", label}, {"index", i}, {"text", texts[i]}});
        }
      }
    }
    return out;
  }

 private:
  void Push(const std::string &label, std::string text) {
    auto it = std::find_if(sections_.begin(), sections_.end(),
                           [&](const auto &s) { return s.first == label; });
    if (it == sections_.end()) {
      sections_.push_back({label, {}});
      it = std::prev(sections_.end());
    }
    it->second.push_back(std::move(text));
  }

  // Inserts at a random position; returns "label:index" of the insertion
  // after all insertions into that section are done, so callers needing the
  // id must insert last.
  std::string Insert(const std::string &label, std::string text) {
    Push(label, "");
    auto it = std::find_if(sections_.begin(), sections_.end(),
                           [&](const auto &s) { return s.first == label; });
    auto &v = it->second;
    v.pop_back();
    const size_t pos = gen_.rng().Index(v.size() + 1);
    v.insert(v.begin() + static_cast<std::ptrdiff_t>(pos), std::move(text));
    return label + ":" + std::to_string(pos);
  }

  Generator gen_;
  std::vector<std::pair<std::string, std::vector<std::string>>> sections_;
};

inline void WriteMiniCorpus(const MiniCorpus &mc, const fs::path &dir) {
  fs::create_directories(dir);
  AtomicWriteFile(dir / "corpus.jsonl", ToJsonLines(mc.sentences));
  AtomicWriteFile(dir / "metadata.jsonl", ToJsonLines(mc.papers));
  AtomicWriteFile(dir / "citations.jsonl", ToJsonLines(mc.citations));
}

}  // namespace paramine::synth

#endif  // PARAMINE_SYNTH_HPP_
