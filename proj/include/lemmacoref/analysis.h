#ifndef LEMMACOREF_ANALYSIS_H_
#define LEMMACOREF_ANALYSIS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lemmacoref/clustering.h"
#include "lemmacoref/corpus.h"
#include "lemmacoref/heuristic.h"
#include "lemmacoref/scorer_bridge.h"

namespace lemmacoref {

struct SplitDistribution {
  CategoryCounts counts;

  // Share of all generated pairs in the split; 0 for an empty split.
  double fraction(PairCategory category) const;
  // Gold-coreferent share: easy + false negative + recovered over total.
  double coreferent_ratio() const;
};

using DistributionReport = std::map<Split, SplitDistribution>;

// A pair belongs to the split of its first mention.
DistributionReport BuildDistributionReport(
    const std::vector<PairVerdict> &verdicts,
    const Categorization &categorization, const Corpus &corpus);

// Header: split,p_easy,p_hard,p_fn,p_tn,p_recovered,total,frac_easy,
// frac_hard,frac_fn,frac_tn,frac_recovered,coreferent_ratio
std::string DistributionCsv(const DistributionReport &report);

struct PurityEntry {
  std::string cluster_id;
  // Member pairs whose gold clusters differ.
  std::size_t impurity = 0;
  std::size_t size = 0;
  // impurity / C(size, 2); 0 for singletons.
  double impurity_fraction = 0.0;

  bool operator==(const PurityEntry &other) const = default;
};

// Sorted by impurity descending, then cluster id.
std::vector<PurityEntry> PurityRanking(const ClusterAssignment &assignment,
                                       const GoldClusterMap &gold);

// Header: cluster_id,impurity,size,impurity_fraction
std::string PurityCsv(const std::vector<PurityEntry> &ranking);

enum class ErrorKind { kFalsePositive, kFalseNegative };

struct ErrorPair {
  ErrorKind kind = ErrorKind::kFalsePositive;
  MentionPair pair;
  std::optional<PairVerdict> verdict;
  std::optional<ScoreRecord> score;
};

// False positives: clustering links joining mentions of different gold
// clusters (these are exactly the links inside impure clusters that break
// purity). Links are the scorer decisions when `records` is given, else the
// heuristic positives. False negatives: gold-coreferent pairs left in
// different predicted clusters. Each carries its verdict and score if known.
std::vector<ErrorPair> ErrorPairs(const ClusterAssignment &assignment,
                                  const Corpus &corpus,
                                  const std::vector<PairVerdict> &verdicts,
                                  const std::vector<ScoreRecord> *records);

// JSON Lines {type, a, b, trigger_a, trigger_b, sentence_a, sentence_b,
// cluster_a, cluster_b, gold_a, gold_b, rule?, overlap?, score_ab?,
// score_ba?, symmetric?}.
std::string SerializeErrors(const std::vector<ErrorPair> &errors,
                            const Corpus &corpus,
                            const ClusterAssignment &assignment);

}  // namespace lemmacoref

#endif  // LEMMACOREF_ANALYSIS_H_
