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

#ifndef PARAMINE_LEXICON_HPP_
#define PARAMINE_LEXICON_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace paramine {

// Groups of interchangeable words common in scientific prose. The hashed
// encoder gives every member of a group a shared concept component, which is
// what a pretrained encoder would have learned about these words.
inline const std::vector<std::vector<std::string>> &ScientificSynonymGroups() {
  static const std::vector<std::vector<std::string>> groups = {
      {"use", "employ", "utilize", "adopt", "apply"},
      {"used", "employed", "utilized", "adopted", "applied"},
      {"using", "employing", "utilizing", "adopting", "applying"},
      {"method", "approach", "technique", "procedure"},
      {"methods", "approaches", "techniques", "procedures"},
      {"model", "system", "framework"},
      {"models", "systems", "frameworks"},
      {"show", "demonstrate", "reveal", "indicate"},
      {"shows", "demonstrates", "reveals", "indicates"},
      {"showed", "demonstrated", "revealed", "indicated"},
      {"result", "outcome", "finding"},
      {"results", "outcomes", "findings"},
      {"improve", "enhance", "boost"},
      {"improves", "enhances", "boosts"},
      {"improved", "enhanced", "boosted"},
      {"performance", "accuracy", "effectiveness"},
      {"propose", "present", "introduce", "describe"},
      {"proposed", "presented", "introduced", "described"},
      {"task", "problem", "challenge"},
      {"tasks", "problems", "challenges"},
      {"large", "big", "huge", "substantial"},
      {"small", "little", "tiny", "limited"},
      {"important", "crucial", "essential", "critical", "key"},
      {"given", "provided", "supplied", "offered"},
      {"give", "provide", "supply", "offer"},
      {"gives", "provides", "supplies", "offers"},
      {"obtain", "acquire", "get", "gain"},
      {"obtained", "acquired", "gained"},
      {"data", "corpus", "dataset"},
      {"datasets", "corpora"},
      {"evaluate", "assess", "measure", "test"},
      {"evaluated", "assessed", "measured", "tested"},
      {"evaluation", "assessment"},
      {"train", "fit", "learn"},
      {"trained", "fitted", "learned", "learnt"},
      {"training", "learning", "fitting"},
      {"effective", "efficient", "successful"},
      {"significantly", "substantially", "considerably", "markedly"},
      {"significant", "substantial", "considerable", "notable"},
      {"previous", "prior", "earlier", "existing"},
      {"recent", "latest", "modern"},
      {"focus", "concentrate", "center"},
      {"directly", "immediately"},
      {"only", "solely", "merely", "just"},
      {"also", "additionally", "furthermore", "moreover"},
      {"however", "nevertheless", "nonetheless", "yet"},
      {"therefore", "thus", "hence", "consequently"},
      {"paper", "work", "study", "article"},
      {"investigate", "study", "examine", "explore", "analyze"},
      {"investigated", "studied", "examined", "explored", "analyzed"},
      {"achieve", "attain", "reach", "obtain"},
      {"achieves", "attains", "reaches", "obtains"},
      {"achieved", "attained", "reached"},
      {"combine", "merge", "integrate", "unify"},
      {"combines", "merges", "integrates", "unifies"},
      {"novel", "new", "original"},
      {"simple", "straightforward", "basic"},
      {"complex", "complicated", "sophisticated"},
      {"different", "distinct", "various", "diverse"},
      {"similar", "comparable", "analogous"},
      {"identify", "recognize", "detect", "determine"},
      {"identifying", "recognizing", "detecting", "determining"},
      {"predict", "estimate", "forecast"},
      {"predicts", "estimates", "forecasts"},
      {"generate", "produce", "create"},
      {"generates", "produces", "creates"},
      {"producing", "generating", "creating"},
      {"shorter", "briefer", "condensed"},
      {"meaning", "sense", "semantics"},
      {"correct", "right", "proper", "accurate"},
      {"never", "not ever"},
      {"during", "throughout", "while"},
      {"because", "since", "as"},
      {"require", "need", "demand"},
      {"requires", "needs", "demands"},
      {"reduce", "decrease", "lower", "cut"},
      {"reduces", "decreases", "lowers", "cuts"},
      {"increase", "raise", "grow"},
      {"increases", "raises", "grows"},
      {"fast", "quick", "rapid"},
      {"slow", "sluggish"},
      {"robust", "stable", "reliable"},
      {"aspects", "facets", "dimensions"},
      {"emphasis", "stress"},
      {"relevant", "pertinent", "related"},
      {"experiments", "trials", "tests"},
      {"experiment", "trial"},
      {"outperforms", "surpasses", "exceeds", "beats"},
      {"outperform", "surpass", "exceed", "beat"},
      {"baseline", "benchmark", "reference"},
      {"baselines", "benchmarks"},
      {"sentence", "utterance"},
      {"sentences", "utterances"},
      {"word", "token", "term"},
      {"words", "tokens", "terms"},
      {"network", "architecture"},
      {"networks", "architectures"},
      {"feature", "attribute", "characteristic"},
      {"features", "attributes", "characteristics"},
      {"extract", "mine", "harvest"},
      {"extracted", "mined", "harvested"},
      {"goal", "aim", "objective", "purpose"},
      {"explain", "clarify", "elucidate"},
      {"explains", "clarifies", "elucidates"},
      {"enable", "allow", "permit"},
      {"enables", "allows", "permits"},
      {"rely", "depend"},
      {"relies", "depends"},
      {"many", "numerous", "several"},
      {"often", "frequently", "commonly"},
      {"typically", "usually", "generally"},
      {"consider", "regard", "treat"},
      {"considered", "regarded", "treated"},
  };
  return groups;
}

// Maps each word of the synonym groups to its group index.
class Lexicon {
 public:
  Lexicon() = default;

  static const Lexicon &Scientific() {
    static const Lexicon lex(ScientificSynonymGroups());
    return lex;
  }

  explicit Lexicon(const std::vector<std::vector<std::string>> &groups) : groups_(groups) {
    for (size_t g = 0; g < groups_.size(); ++g) {
      for (const auto &w : groups_[g]) group_of_.emplace(w, g);
    }
  }

  // Canonical concept for a word: the group head, or the word itself.
  std::string_view Concept(std::string_view word) const {
    auto it = group_of_.find(word);
    return it == group_of_.end() ? word : std::string_view(groups_[it->second].front());
  }

  const std::vector<std::string> *Synonyms(std::string_view word) const {
    auto it = group_of_.find(word);
    return it == group_of_.end() ? nullptr : &groups_[it->second];
  }

  bool empty() const { return groups_.empty(); }

 private:
  std::vector<std::vector<std::string>> groups_;
  std::map<std::string, size_t, std::less<>> group_of_;
};

inline bool IsStopword(std::string_view w) {
  static const char *const kStop[] = {
      "a",    "an",   "the",  "of",   "to",    "in",    "on",   "for",  "and",
      "or",   "is",   "are",  "was",  "were",  "be",    "been", "by",   "with",
      "as",   "at",   "that", "this", "these", "those", "it",   "its",  "we",
      "our",  "from", "which", "than", "can",  "into",  "has",  "have", "had",
      "not",  "but",  "also", "their", "they", "such",  "there", "then", "so",
      "will", "would", "some", "all",  "each"};
  for (const char *s : kStop) {
    if (w == s) return true;
  }
  return false;
}

}  // namespace paramine

#endif  // PARAMINE_LEXICON_HPP_
