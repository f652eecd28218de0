#ifndef LEMMACOREF_HEURISTIC_H_
#define LEMMACOREF_HEURISTIC_H_

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lemmacoref/corpus.h"
#include "lemmacoref/pairs.h"
#include "lemmacoref/syn_pairs.h"

namespace lemmacoref {

enum class OverlapMeasure { kJaccard, kMinOverlap };

OverlapMeasure ParseOverlapMeasure(std::string_view name);

struct HeuristicConfig {
  // A pair is positive only when its sentence overlap is strictly greater.
  double threshold = 0.0;
  std::set<std::string> stop_lemmas;
  OverlapMeasure overlap = OverlapMeasure::kJaccard;
  // Mentions in the same sentence of the same document are never positive.
  bool exclude_same_sentence = false;

  // Throws Error(kInvalidConfig) unless threshold is in [0, 1].
  void Validate() const;
};

// Bundled English stop-lemma list (also shipped as data/stop_lemmas_en.txt).
const std::set<std::string> &DefaultStopLemmas();
// One lemma per line; blank lines and lines starting with '#' are skipped.
std::set<std::string> ParseStopLemmas(std::string_view text);
std::set<std::string> LoadStopLemmas(const std::string &path);

// Trigger-match rules in reporting order. kAContainsB: B's trigger contains
// A's head lemma; kBContainsA: A's trigger contains B's head lemma.
enum class MatchRule { kNone, kSynPair, kEqualLemma, kAContainsB, kBContainsA };

std::string_view MatchRuleName(MatchRule rule);
MatchRule ParseMatchRule(std::string_view name);

// First satisfied rule: syn pair, equal lemma, l_A in t_B, l_B in t_A.
// Containment is a case-insensitive substring test on the raw trigger.
MatchRule TriggerMatch(const Mention &a, const Mention &b,
                       const SynPairSet &syn);

// Jaccard or min-overlap of the stop-filtered sentence lemma sets, in [0, 1].
double SentenceOverlap(const Mention &a, const Mention &b,
                       const HeuristicConfig &config);

struct PairVerdict {
  MentionPair pair;
  bool positive = false;
  double overlap = 0.0;
  MatchRule rule = MatchRule::kNone;

  bool operator==(const PairVerdict &other) const = default;
};

// positive = rule != kNone && overlap > threshold. Throws
// Error(kUnknownMentionId) for pairs naming mentions outside the corpus.
std::vector<PairVerdict> ClassifyPairs(const std::vector<MentionPair> &pairs,
                                       const Corpus &corpus,
                                       const SynPairSet &syn,
                                       const HeuristicConfig &config);

std::vector<MentionPair> PositivePairs(const std::vector<PairVerdict> &verdicts);

// JSON Lines {a, b, positive, overlap, rule}.
std::string SerializeVerdicts(const std::vector<PairVerdict> &verdicts);
std::vector<PairVerdict> ParseVerdicts(std::string_view jsonl);

// Gold-relative categories. kRecovered marks a gold-coreferent pair the
// heuristic rejected whose mentions are still joined through positive
// coreferent edges of their gold cluster, so closure restores it.
enum class PairCategory { kEasy, kHard, kFalseNegative, kTrueNegative, kRecovered };

std::string_view PairCategoryName(PairCategory category);

struct CategoryCounts {
  std::size_t easy = 0;
  std::size_t hard = 0;
  std::size_t false_negative = 0;
  std::size_t true_negative = 0;
  std::size_t recovered = 0;

  std::size_t total() const {
    return easy + hard + false_negative + true_negative + recovered;
  }
  void add(PairCategory category);
  bool operator==(const CategoryCounts &other) const = default;
};

struct Categorization {
  // Parallel to the input verdicts.
  std::vector<PairCategory> categories;
  CategoryCounts counts;

  std::map<MentionPair, PairCategory> by_pair(
      const std::vector<PairVerdict> &verdicts) const;
};

// Throws Error(kUnknownMentionId) for pairs without gold labels, and
// Error(kInconsistentPairSet) when the gold-coreferent pairs of a cluster do
// not form one complete clique (cluster split across groups, or duplicates).
Categorization CategorizePairs(const std::vector<PairVerdict> &verdicts,
                               const GoldClusterMap &gold);

// JSON {p_easy, p_hard, p_fn, p_tn, p_recovered}.
std::string CategoryCountsJson(const CategoryCounts &counts);

enum class TuneObjective { kConllF1, kMucF1, kBCubedF1, kCeafeF1, kLeaF1 };

TuneObjective ParseTuneObjective(std::string_view name);

struct TuneResult {
  double threshold = 0.0;
  double objective = 0.0;
  // (threshold, objective) per grid point, ascending threshold.
  std::vector<std::pair<double, double>> evaluated;
};

// Clusters the heuristic positives of `dev` at every grid threshold and
// returns the argmax of the objective; ties go to the smaller threshold.
// Throws Error(kEmptyGrid) or Error(kInvalidConfig).
TuneResult TuneThreshold(const Corpus &dev, const SynPairSet &syn,
                         std::vector<double> grid, TuneObjective objective,
                         const HeuristicConfig &base, TopicKey key);

}  // namespace lemmacoref

#endif  // LEMMACOREF_HEURISTIC_H_
