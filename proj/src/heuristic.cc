#include "lemmacoref/heuristic.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "io.h"
#include "json.hpp"
#include "lemmacoref/clustering.h"
#include "lemmacoref/error.h"
#include "lemmacoref/metrics.h"
#include "lemmacoref/union_find.h"
#include "text.h"

namespace lemmacoref {
namespace {

using nlohmann::json;

std::vector<std::string> FilteredLemmaSet(const Mention &m,
                                          const std::set<std::string> &stop) {
  std::vector<std::string> lemmas;
  lemmas.reserve(m.sentence_lemmas.size());
  for (const std::string &lemma : m.sentence_lemmas) {
    if (!stop.count(lemma)) lemmas.push_back(lemma);
  }
  std::sort(lemmas.begin(), lemmas.end());
  lemmas.erase(std::unique(lemmas.begin(), lemmas.end()), lemmas.end());
  return lemmas;
}

double Overlap(const std::vector<std::string> &x,
               const std::vector<std::string> &y, OverlapMeasure measure) {
  std::size_t common = 0;
  for (auto i = x.begin(), j = y.begin(); i != x.end() && j != y.end();) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  if (measure == OverlapMeasure::kJaccard) {
    const std::size_t united = x.size() + y.size() - common;
    return united == 0 ? 0.0
                       : static_cast<double>(common) /
                             static_cast<double>(united);
  }
  const std::size_t smaller = std::min(x.size(), y.size());
  return smaller == 0 ? 0.0
                      : static_cast<double>(common) /
                            static_cast<double>(smaller);
}

MatchRule Match(const Mention &a, const std::string &lower_trigger_a,
                const Mention &b, const std::string &lower_trigger_b,
                const SynPairSet &syn) {
  if (syn.contains(a.head_lemma, b.head_lemma)) return MatchRule::kSynPair;
  if (a.head_lemma == b.head_lemma) return MatchRule::kEqualLemma;
  if (lower_trigger_b.find(a.head_lemma) != std::string::npos) {
    return MatchRule::kAContainsB;
  }
  if (lower_trigger_a.find(b.head_lemma) != std::string::npos) {
    return MatchRule::kBContainsA;
  }
  return MatchRule::kNone;
}

bool SameSentence(const Mention &a, const Mention &b) {
  return a.doc_id == b.doc_id && a.sentence_id == b.sentence_id;
}

double ObjectiveValue(const MetricReport &report, TuneObjective objective) {
  switch (objective) {
    case TuneObjective::kConllF1: return report.conll_f1;
    case TuneObjective::kMucF1: return report.muc.f1;
    case TuneObjective::kBCubedF1: return report.b_cubed.f1;
    case TuneObjective::kCeafeF1: return report.ceaf_e.f1;
    case TuneObjective::kLeaF1: return report.lea.f1;
  }
  return 0.0;
}

}  // namespace

OverlapMeasure ParseOverlapMeasure(std::string_view name) {
  if (name == "jaccard") return OverlapMeasure::kJaccard;
  if (name == "min") return OverlapMeasure::kMinOverlap;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown overlap measure '" + std::string(name) + "'");
}

void HeuristicConfig::Validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "threshold must lie in [0, 1]");
  }
}

std::set<std::string> ParseStopLemmas(std::string_view text) {
  std::set<std::string> lemmas;
  for (std::string_view line : internal::SplitLines(text)) {
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) {
      line.remove_prefix(1);
    }
    if (line.empty() || line.front() == '#') continue;
    lemmas.insert(internal::LowerAscii(line));
  }
  return lemmas;
}

std::set<std::string> LoadStopLemmas(const std::string &path) {
  return ParseStopLemmas(internal::ReadFile(path));
}

std::string_view MatchRuleName(MatchRule rule) {
  switch (rule) {
    case MatchRule::kNone: return "none";
    case MatchRule::kSynPair: return "syn_pair";
    case MatchRule::kEqualLemma: return "equal_lemma";
    case MatchRule::kAContainsB: return "a_contains_b";
    case MatchRule::kBContainsA: return "b_contains_a";
  }
  return "none";
}

MatchRule ParseMatchRule(std::string_view name) {
  for (MatchRule rule : {MatchRule::kNone, MatchRule::kSynPair,
                         MatchRule::kEqualLemma, MatchRule::kAContainsB,
                         MatchRule::kBContainsA}) {
    if (MatchRuleName(rule) == name) return rule;
  }
  throw Error(ErrorCode::kMalformedRecord,
              "unknown rule '" + std::string(name) + "'");
}

MatchRule TriggerMatch(const Mention &a, const Mention &b,
                       const SynPairSet &syn) {
  return Match(a, internal::LowerAscii(a.trigger_text), b,
               internal::LowerAscii(b.trigger_text), syn);
}

double SentenceOverlap(const Mention &a, const Mention &b,
                       const HeuristicConfig &config) {
  return Overlap(FilteredLemmaSet(a, config.stop_lemmas),
                 FilteredLemmaSet(b, config.stop_lemmas), config.overlap);
}

std::vector<PairVerdict> ClassifyPairs(const std::vector<MentionPair> &pairs,
                                       const Corpus &corpus,
                                       const SynPairSet &syn,
                                       const HeuristicConfig &config) {
  config.Validate();
  // Per-mention preprocessing, filled on first use.
  struct Prepared {
    bool ready = false;
    std::string trigger;
    std::vector<std::string> lemmas;
  };
  std::vector<Prepared> prepared(corpus.size());
  auto prepare = [&](std::size_t i) -> const Prepared & {
    Prepared &p = prepared[i];
    if (!p.ready) {
      p.trigger = internal::LowerAscii(corpus.mentions()[i].trigger_text);
      p.lemmas = FilteredLemmaSet(corpus.mentions()[i], config.stop_lemmas);
      p.ready = true;
    }
    return p;
  };

  std::vector<PairVerdict> verdicts;
  verdicts.reserve(pairs.size());
  for (const MentionPair &pair : pairs) {
    const std::size_t ia = corpus.index_of(pair.a);
    const std::size_t ib = corpus.index_of(pair.b);
    const Mention &a = corpus.mentions()[ia];
    const Mention &b = corpus.mentions()[ib];
    const Prepared &pa = prepare(ia);
    const Prepared &pb = prepare(ib);
    PairVerdict v;
    v.pair = pair;
    v.rule = Match(a, pa.trigger, b, pb.trigger, syn);
    v.overlap = Overlap(pa.lemmas, pb.lemmas, config.overlap);
    v.positive = v.rule != MatchRule::kNone && v.overlap > config.threshold &&
                 !(config.exclude_same_sentence && SameSentence(a, b));
    verdicts.push_back(std::move(v));
  }
  return verdicts;
}

std::vector<MentionPair> PositivePairs(
    const std::vector<PairVerdict> &verdicts) {
  std::vector<MentionPair> positives;
  for (const PairVerdict &v : verdicts) {
    if (v.positive) positives.push_back(v.pair);
  }
  return positives;
}

std::string SerializeVerdicts(const std::vector<PairVerdict> &verdicts) {
  std::string out;
  for (const PairVerdict &v : verdicts) {
    nlohmann::ordered_json record = {{"a", v.pair.a},
                                     {"b", v.pair.b},
                                     {"positive", v.positive},
                                     {"overlap", v.overlap},
                                     {"rule", MatchRuleName(v.rule)}};
    out += record.dump();
    out += '\n';
  }
  return out;
}

std::vector<PairVerdict> ParseVerdicts(std::string_view jsonl) {
  std::vector<PairVerdict> verdicts;
  auto lines = internal::SplitLines(jsonl);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (internal::IsBlank(lines[n])) continue;
    json record = json::parse(lines[n], nullptr, false);
    auto bad = [&] {
      return Error(ErrorCode::kMalformedRecord,
                   "verdict line " + std::to_string(n + 1));
    };
    if (record.is_discarded() || !record.is_object()) throw bad();
    try {
      PairVerdict v;
      v.pair = MakePair(record.at("a").get<std::string>(),
                        record.at("b").get<std::string>());
      v.positive = record.at("positive").get<bool>();
      v.overlap = record.at("overlap").get<double>();
      v.rule = ParseMatchRule(record.at("rule").get<std::string>());
      verdicts.push_back(std::move(v));
    } catch (const json::exception &) {
      throw bad();
    }
  }
  return verdicts;
}

std::string_view PairCategoryName(PairCategory category) {
  switch (category) {
    case PairCategory::kEasy: return "p_easy";
    case PairCategory::kHard: return "p_hard";
    case PairCategory::kFalseNegative: return "p_fn";
    case PairCategory::kTrueNegative: return "p_tn";
    case PairCategory::kRecovered: return "p_recovered";
  }
  return "?";
}

void CategoryCounts::add(PairCategory category) {
  switch (category) {
    case PairCategory::kEasy: ++easy; break;
    case PairCategory::kHard: ++hard; break;
    case PairCategory::kFalseNegative: ++false_negative; break;
    case PairCategory::kTrueNegative: ++true_negative; break;
    case PairCategory::kRecovered: ++recovered; break;
  }
}

std::map<MentionPair, PairCategory> Categorization::by_pair(
    const std::vector<PairVerdict> &verdicts) const {
  std::map<MentionPair, PairCategory> out;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    out.emplace(verdicts[i].pair, categories[i]);
  }
  return out;
}

Categorization CategorizePairs(const std::vector<PairVerdict> &verdicts,
                               const GoldClusterMap &gold) {
  auto cluster_of = [&](const std::string &id) -> const std::string & {
    auto it = gold.find(id);
    if (it == gold.end()) {
      throw Error(ErrorCode::kUnknownMentionId, "no gold label for '" + id + "'");
    }
    return it->second;
  };

  // Dense ids for mentions taking part in gold-coreferent pairs.
  std::unordered_map<std::string_view, std::size_t> node;
  std::vector<const std::string *> node_cluster;
  auto node_of = [&](const std::string &id, const std::string &cluster) {
    auto [it, inserted] = node.emplace(id, node.size());
    if (inserted) node_cluster.push_back(&cluster);
    return it->second;
  };

  std::vector<char> coreferent(verdicts.size(), 0);
  std::map<std::string_view, std::size_t> cluster_pairs;
  std::vector<std::pair<std::size_t, std::size_t>> ends(verdicts.size());
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const MentionPair &p = verdicts[i].pair;
    const std::string &ca = cluster_of(p.a);
    const std::string &cb = cluster_of(p.b);
    if (ca != cb) continue;
    coreferent[i] = 1;
    ends[i] = {node_of(p.a, ca), node_of(p.b, cb)};
    ++cluster_pairs[ca];
  }

  // Positive coreferent edges always stay inside one gold cluster, so a
  // single union-find over all nodes is the per-cluster closure.
  UnionFind closure(node.size());
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    if (coreferent[i] && verdicts[i].positive) {
      closure.join(ends[i].first, ends[i].second);
    }
  }

  std::map<std::string_view, std::size_t> cluster_nodes;
  for (const std::string *cluster : node_cluster) ++cluster_nodes[*cluster];
  for (const auto &[cluster, n] : cluster_nodes) {
    if (cluster_pairs[cluster] != n * (n - 1) / 2) {
      throw Error(ErrorCode::kInconsistentPairSet,
                  "gold cluster '" + std::string(cluster) + "' has " +
                      std::to_string(cluster_pairs[cluster]) +
                      " coreferent pairs over " + std::to_string(n) +
                      " mentions");
    }
  }

  Categorization result;
  result.categories.reserve(verdicts.size());
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    PairCategory category;
    if (verdicts[i].positive) {
      category = coreferent[i] ? PairCategory::kEasy : PairCategory::kHard;
    } else if (!coreferent[i]) {
      category = PairCategory::kTrueNegative;
    } else {
      category = closure.connected(ends[i].first, ends[i].second)
                     ? PairCategory::kRecovered
                     : PairCategory::kFalseNegative;
    }
    result.categories.push_back(category);
    result.counts.add(category);
  }
  return result;
}

std::string CategoryCountsJson(const CategoryCounts &counts) {
  nlohmann::ordered_json out = {{"p_easy", counts.easy},
                                {"p_hard", counts.hard},
                                {"p_fn", counts.false_negative},
                                {"p_tn", counts.true_negative},
                                {"p_recovered", counts.recovered}};
  return out.dump();
}

TuneObjective ParseTuneObjective(std::string_view name) {
  if (name == "conll") return TuneObjective::kConllF1;
  if (name == "muc") return TuneObjective::kMucF1;
  if (name == "b3") return TuneObjective::kBCubedF1;
  if (name == "ceafe") return TuneObjective::kCeafeF1;
  if (name == "lea") return TuneObjective::kLeaF1;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown objective '" + std::string(name) + "'");
}

TuneResult TuneThreshold(const Corpus &dev, const SynPairSet &syn,
                         std::vector<double> grid, TuneObjective objective,
                         const HeuristicConfig &base, TopicKey key) {
  if (grid.empty()) throw Error(ErrorCode::kEmptyGrid, "empty threshold grid");
  for (double t : grid) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw Error(ErrorCode::kInvalidConfig, "grid value outside [0, 1]");
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  // Rules and overlaps do not depend on the threshold: classify the rule
  // candidates once at threshold 0 and filter per grid point.
  HeuristicConfig config = base;
  config.threshold = 0.0;
  std::vector<PairVerdict> verdicts =
      ClassifyPairs(GenerateCandidates(dev, key, syn), dev, syn, config);
  const Partition gold = GoldPartition(dev);

  TuneResult result;
  bool first = true;
  for (double t : grid) {
    std::vector<MentionPair> edges;
    for (const PairVerdict &v : verdicts) {
      if (v.positive && v.overlap > t) edges.push_back(v.pair);
    }
    const double value = ObjectiveValue(
        Evaluate(gold, ToPartition(ClusterMentions(dev, edges))), objective);
    result.evaluated.emplace_back(t, value);
    if (first || value > result.objective) {
      result.threshold = t;
      result.objective = value;
      first = false;
    }
  }
  return result;
}

}  // namespace lemmacoref
