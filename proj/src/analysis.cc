#include "lemmacoref/analysis.h"

#include <algorithm>

#include "io.h"
#include "json.hpp"
#include "lemmacoref/error.h"

namespace lemmacoref {
namespace {

std::string JoinTokens(const std::vector<std::string> &tokens) {
  std::string out;
  for (const std::string &t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

}  // namespace

double SplitDistribution::fraction(PairCategory category) const {
  const std::size_t total = counts.total();
  if (total == 0) return 0.0;
  std::size_t n = 0;
  switch (category) {
    case PairCategory::kEasy: n = counts.easy; break;
    case PairCategory::kHard: n = counts.hard; break;
    case PairCategory::kFalseNegative: n = counts.false_negative; break;
    case PairCategory::kTrueNegative: n = counts.true_negative; break;
    case PairCategory::kRecovered: n = counts.recovered; break;
  }
  return static_cast<double>(n) / static_cast<double>(total);
}

double SplitDistribution::coreferent_ratio() const {
  const std::size_t total = counts.total();
  if (total == 0) return 0.0;
  return static_cast<double>(counts.easy + counts.false_negative +
                             counts.recovered) /
         static_cast<double>(total);
}

DistributionReport BuildDistributionReport(
    const std::vector<PairVerdict> &verdicts,
    const Categorization &categorization, const Corpus &corpus) {
  if (verdicts.size() != categorization.categories.size()) {
    throw Error(ErrorCode::kInvalidConfig,
                "categories do not match the verdict list");
  }
  DistributionReport report;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const Split split = corpus.at(verdicts[i].pair.a).split;
    report[split].counts.add(categorization.categories[i]);
  }
  return report;
}

std::string DistributionCsv(const DistributionReport &report) {
  std::string out =
      "split,p_easy,p_hard,p_fn,p_tn,p_recovered,total,frac_easy,frac_hard,"
      "frac_fn,frac_tn,frac_recovered,coreferent_ratio\n";
  using internal::FormatDouble;
  for (const auto &[split, d] : report) {
    const CategoryCounts &c = d.counts;
    out += std::string(SplitName(split));
    for (std::size_t n : {c.easy, c.hard, c.false_negative, c.true_negative,
                          c.recovered, c.total()}) {
      out += ',' + std::to_string(n);
    }
    for (PairCategory category :
         {PairCategory::kEasy, PairCategory::kHard, PairCategory::kFalseNegative,
          PairCategory::kTrueNegative, PairCategory::kRecovered}) {
      out += ',' + FormatDouble(d.fraction(category));
    }
    out += ',' + FormatDouble(d.coreferent_ratio()) + '\n';
  }
  return out;
}

std::vector<PurityEntry> PurityRanking(const ClusterAssignment &assignment,
                                       const GoldClusterMap &gold) {
  std::vector<PurityEntry> ranking;
  for (const auto &[cluster, members] : ClusterMembers(assignment)) {
    std::map<std::string, std::size_t> gold_sizes;
    for (const std::string &m : members) {
      auto it = gold.find(m);
      if (it == gold.end()) throw Error(ErrorCode::kUnknownMentionId, m);
      ++gold_sizes[it->second];
    }
    const std::size_t n = members.size();
    std::size_t same = 0;
    for (const auto &[g, size] : gold_sizes) same += size * (size - 1) / 2;
    PurityEntry entry;
    entry.cluster_id = cluster;
    entry.size = n;
    entry.impurity = n * (n - 1) / 2 - same;
    entry.impurity_fraction =
        n < 2 ? 0.0
              : static_cast<double>(entry.impurity) /
                    static_cast<double>(n * (n - 1) / 2);
    ranking.push_back(std::move(entry));
  }
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const PurityEntry &x, const PurityEntry &y) {
                     if (x.impurity != y.impurity) return x.impurity > y.impurity;
                     return x.cluster_id < y.cluster_id;
                   });
  return ranking;
}

std::string PurityCsv(const std::vector<PurityEntry> &ranking) {
  std::string out = "cluster_id,impurity,size,impurity_fraction\n";
  for (const PurityEntry &e : ranking) {
    out += e.cluster_id + ',' + std::to_string(e.impurity) + ',' +
           std::to_string(e.size) + ',' +
           internal::FormatDouble(e.impurity_fraction) + '\n';
  }
  return out;
}

std::vector<ErrorPair> ErrorPairs(const ClusterAssignment &assignment,
                                  const Corpus &corpus,
                                  const std::vector<PairVerdict> &verdicts,
                                  const std::vector<ScoreRecord> *records) {
  std::map<MentionPair, const PairVerdict *> verdict_of;
  for (const PairVerdict &v : verdicts) verdict_of.emplace(v.pair, &v);
  std::map<MentionPair, const ScoreRecord *> score_of;
  if (records) {
    for (const ScoreRecord &r : *records) score_of.emplace(r.pair, &r);
  }
  auto annotate = [&](ErrorKind kind, const MentionPair &pair) {
    ErrorPair e;
    e.kind = kind;
    e.pair = pair;
    if (auto it = verdict_of.find(pair); it != verdict_of.end()) {
      e.verdict = *it->second;
    }
    if (auto it = score_of.find(pair); it != score_of.end()) {
      e.score = *it->second;
    }
    return e;
  };
  const GoldClusterMap &gold = corpus.gold();

  std::vector<ErrorPair> errors;
  const std::vector<MentionPair> links =
      records ? Decide(*records) : PositivePairs(verdicts);
  for (const MentionPair &link : links) {
    if (gold.at(link.a) != gold.at(link.b)) {
      errors.push_back(annotate(ErrorKind::kFalsePositive, link));
    }
  }

  std::vector<ErrorPair> misses;
  for (const auto &[cluster, members] :
       ClusterMembers(ClusterAssignment(gold.begin(), gold.end()))) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        if (assignment.at(members[i]) != assignment.at(members[j])) {
          misses.push_back(annotate(ErrorKind::kFalseNegative,
                                    MakePair(members[i], members[j])));
        }
      }
    }
  }
  std::sort(misses.begin(), misses.end(),
            [](const ErrorPair &x, const ErrorPair &y) { return x.pair < y.pair; });
  errors.insert(errors.end(), misses.begin(), misses.end());
  return errors;
}

std::string SerializeErrors(const std::vector<ErrorPair> &errors,
                            const Corpus &corpus,
                            const ClusterAssignment &assignment) {
  std::string out;
  for (const ErrorPair &e : errors) {
    const Mention &a = corpus.at(e.pair.a);
    const Mention &b = corpus.at(e.pair.b);
    nlohmann::ordered_json record = {
        {"type", e.kind == ErrorKind::kFalsePositive ? "false_positive"
                                                      : "false_negative"},
        {"a", e.pair.a},
        {"b", e.pair.b},
        {"trigger_a", a.trigger_text},
        {"trigger_b", b.trigger_text},
        {"sentence_a", JoinTokens(a.sentence_lemmas)},
        {"sentence_b", JoinTokens(b.sentence_lemmas)},
        {"doc_a", a.doc_id},
        {"doc_b", b.doc_id},
        {"cluster_a", assignment.at(e.pair.a)},
        {"cluster_b", assignment.at(e.pair.b)},
        {"gold_a", corpus.gold().at(e.pair.a)},
        {"gold_b", corpus.gold().at(e.pair.b)}};
    if (e.verdict) {
      record["rule"] = MatchRuleName(e.verdict->rule);
      record["overlap"] = e.verdict->overlap;
    }
    if (e.score) {
      record["score_ab"] = e.score->score_ab;
      record["score_ba"] = e.score->score_ba;
      record["symmetric"] = e.score->symmetric;
    }
    out += record.dump();
    out += '\n';
  }
  return out;
}

}  // namespace lemmacoref
