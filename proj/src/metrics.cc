#include "lemmacoref/metrics.h"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "json.hpp"
#include "lemmacoref/assignment.h"
#include "lemmacoref/error.h"
#include "lemmacoref/union_find.h"

namespace lemmacoref {
namespace {

// Key and response reduced to entity sizes and their non-empty overlaps.
struct Contingency {
  std::vector<std::size_t> key_size;
  std::vector<std::size_t> response_size;
  // Entity index of each mention on either side.
  std::vector<std::size_t> key_of;
  std::vector<std::size_t> response_of;
  // (key entity, response entity) -> |k & r|, ordered.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> overlap;
  std::size_t mentions = 0;
};

Contingency Build(const Partition &key, const Partition &response) {
  Contingency c;
  std::unordered_map<std::string_view, std::size_t> mention_index;
  for (std::size_t k = 0; k < key.size(); ++k) {
    if (key[k].empty()) {
      throw Error(ErrorCode::kInvalidConfig, "empty key entity");
    }
    c.key_size.push_back(key[k].size());
    for (const std::string &m : key[k]) {
      if (!mention_index.emplace(m, mention_index.size()).second) {
        throw Error(ErrorCode::kInvalidConfig,
                    "mention '" + m + "' in two key entities");
      }
      c.key_of.push_back(k);
    }
  }
  c.mentions = mention_index.size();
  c.response_of.assign(c.mentions, 0);
  std::vector<char> seen(c.mentions, 0);
  std::size_t covered = 0;
  for (std::size_t r = 0; r < response.size(); ++r) {
    if (response[r].empty()) {
      throw Error(ErrorCode::kInvalidConfig, "empty response entity");
    }
    c.response_size.push_back(response[r].size());
    for (const std::string &m : response[r]) {
      auto it = mention_index.find(m);
      if (it == mention_index.end()) {
        throw Error(ErrorCode::kUniverseMismatch,
                    "response mention '" + m + "' not in key");
      }
      if (seen[it->second]) {
        throw Error(ErrorCode::kInvalidConfig,
                    "mention '" + m + "' in two response entities");
      }
      seen[it->second] = 1;
      ++covered;
      c.response_of[it->second] = r;
      ++c.overlap[{c.key_of[it->second], r}];
    }
  }
  if (covered != c.mentions) {
    throw Error(ErrorCode::kUniverseMismatch,
                "response covers " + std::to_string(covered) + " of " +
                    std::to_string(c.mentions) + " key mentions");
  }
  return c;
}

double Ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

Score MakeScore(double recall, double precision) {
  return Score{recall, precision, F1(recall, precision)};
}

// MUC recall numerator/denominator over `sizes` partitioned by the other side.
std::pair<double, double> MucSide(
    const std::vector<std::size_t> &sizes,
    const std::vector<std::size_t> &partitions) {
  double num = 0.0, den = 0.0;
  for (std::size_t e = 0; e < sizes.size(); ++e) {
    num += static_cast<double>(sizes[e] - partitions[e]);
    den += static_cast<double>(sizes[e] - 1);
  }
  return {num, den};
}

double Link(std::size_t n) { return static_cast<double>(n) * (n - 1) / 2.0; }

}  // namespace

double F1(double recall, double precision) {
  if (recall + precision == 0.0) return 0.0;
  return 2.0 * recall * precision / (recall + precision);
}

Score Muc(const Partition &key, const Partition &response) {
  Contingency c = Build(key, response);
  std::vector<std::size_t> key_parts(c.key_size.size(), 0);
  std::vector<std::size_t> response_parts(c.response_size.size(), 0);
  for (const auto &[cell, count] : c.overlap) {
    ++key_parts[cell.first];
    ++response_parts[cell.second];
  }
  auto [r_num, r_den] = MucSide(c.key_size, key_parts);
  auto [p_num, p_den] = MucSide(c.response_size, response_parts);
  return MakeScore(Ratio(r_num, r_den), Ratio(p_num, p_den));
}

Score BCubed(const Partition &key, const Partition &response) {
  Contingency c = Build(key, response);
  double r_num = 0.0, p_num = 0.0;
  for (const auto &[cell, count] : c.overlap) {
    const double n = static_cast<double>(count);
    r_num += n * n / static_cast<double>(c.key_size[cell.first]);
    p_num += n * n / static_cast<double>(c.response_size[cell.second]);
  }
  const double total = static_cast<double>(c.mentions);
  return MakeScore(Ratio(r_num, total), Ratio(p_num, total));
}

Score CeafE(const Partition &key, const Partition &response) {
  Contingency c = Build(key, response);
  const std::size_t nk = c.key_size.size();
  const std::size_t nr = c.response_size.size();

  // Entities that share no mention cannot gain from being aligned, so the
  // optimal alignment decomposes over connected components of the overlap
  // graph (key entities 0..nk-1, response entities nk..nk+nr-1).
  UnionFind components(nk + nr);
  for (const auto &[cell, count] : c.overlap) {
    components.join(cell.first, nk + cell.second);
  }
  std::map<std::size_t, std::pair<std::vector<std::size_t>,
                                  std::vector<std::size_t>>>
      groups;
  for (std::size_t k = 0; k < nk; ++k) groups[components.find(k)].first.push_back(k);
  for (std::size_t r = 0; r < nr; ++r) {
    groups[components.find(nk + r)].second.push_back(r);
  }

  double similarity = 0.0;
  for (const auto &[root, members] : groups) {
    const auto &[keys, responses] = members;
    if (keys.empty() || responses.empty()) continue;
    WeightMatrix matrix{keys.size(), responses.size(),
                        std::vector<double>(keys.size() * responses.size(), 0.0)};
    for (std::size_t i = 0; i < keys.size(); ++i) {
      for (std::size_t j = 0; j < responses.size(); ++j) {
        auto it = c.overlap.find({keys[i], responses[j]});
        if (it == c.overlap.end()) continue;
        matrix.weights[i * responses.size() + j] =
            2.0 * static_cast<double>(it->second) /
            static_cast<double>(c.key_size[keys[i]] +
                                c.response_size[responses[j]]);
      }
    }
    similarity += MaxWeightAssignment(matrix).total;
  }
  return MakeScore(Ratio(similarity, static_cast<double>(nk)),
                   Ratio(similarity, static_cast<double>(nr)));
}

Score Lea(const Partition &key, const Partition &response) {
  Contingency c = Build(key, response);
  // Resolved links per entity on both sides.
  std::vector<double> key_resolved(c.key_size.size(), 0.0);
  std::vector<double> response_resolved(c.response_size.size(), 0.0);
  for (const auto &[cell, count] : c.overlap) {
    key_resolved[cell.first] += Link(count);
    response_resolved[cell.second] += Link(count);
  }
  auto side = [](const std::vector<std::size_t> &sizes,
                 const std::vector<double> &resolved,
                 const std::vector<std::size_t> &other_sizes,
                 const std::vector<std::size_t> &first_mention_other) {
    double num = 0.0, den = 0.0;
    for (std::size_t e = 0; e < sizes.size(); ++e) {
      const double size = static_cast<double>(sizes[e]);
      den += size;
      if (sizes[e] == 1) {
        if (other_sizes[first_mention_other[e]] == 1) num += size;
      } else {
        num += size * resolved[e] / Link(sizes[e]);
      }
    }
    return Ratio(num, den);
  };
  // Opposite-side entity of each singleton's mention.
  std::vector<std::size_t> key_other(c.key_size.size(), 0);
  std::vector<std::size_t> response_other(c.response_size.size(), 0);
  for (const auto &[cell, count] : c.overlap) {
    key_other[cell.first] = cell.second;
    response_other[cell.second] = cell.first;
  }
  return MakeScore(
      side(c.key_size, key_resolved, c.response_size, key_other),
      side(c.response_size, response_resolved, c.key_size, response_other));
}

MetricReport Evaluate(const Partition &key, const Partition &response) {
  MetricReport report;
  report.muc = Muc(key, response);
  report.b_cubed = BCubed(key, response);
  report.ceaf_e = CeafE(key, response);
  report.lea = Lea(key, response);
  report.conll_f1 = (report.muc.f1 + report.b_cubed.f1 + report.ceaf_e.f1) / 3.0;
  return report;
}

Partition ToPartition(const ClusterAssignment &assignment) {
  Partition partition;
  for (auto &[cluster, members] : ClusterMembers(assignment)) {
    partition.push_back(std::move(members));
  }
  return partition;
}

Partition GoldPartition(const Corpus &corpus) {
  return ToPartition(ClusterAssignment(corpus.gold().begin(), corpus.gold().end()));
}

std::string SerializeReport(const MetricReport &report) {
  auto score = [](const Score &s) {
    return nlohmann::ordered_json{
        {"recall", s.recall}, {"precision", s.precision}, {"f1", s.f1}};
  };
  nlohmann::ordered_json out = {{"muc", score(report.muc)},
                                {"b_cubed", score(report.b_cubed)},
                                {"ceaf_e", score(report.ceaf_e)},
                                {"lea", score(report.lea)},
                                {"conll_f1", report.conll_f1}};
  return out.dump(2) + "\n";
}

}  // namespace lemmacoref
