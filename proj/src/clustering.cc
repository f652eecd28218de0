#include "lemmacoref/clustering.h"

#include <sstream>
#include <unordered_map>

#include "io.h"
#include "json.hpp"
#include "lemmacoref/error.h"
#include "lemmacoref/union_find.h"

namespace lemmacoref {

ClusterAssignment ConnectedComponents(const CorefGraph &graph) {
  std::unordered_map<std::string_view, std::size_t> index;
  index.reserve(graph.nodes.size());
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    if (!index.emplace(graph.nodes[i], i).second) {
      throw Error(ErrorCode::kInvalidConfig,
                  "duplicate node '" + graph.nodes[i] + "'");
    }
  }
  auto lookup = [&](const std::string &id) {
    auto it = index.find(id);
    if (it == index.end()) throw Error(ErrorCode::kUnknownMentionId, id);
    return it->second;
  };
  UnionFind sets(graph.nodes.size());
  for (const MentionPair &edge : graph.edges) {
    if (edge.a == edge.b) {
      throw Error(ErrorCode::kInvalidConfig, "self-loop on '" + edge.a + "'");
    }
    sets.join(lookup(edge.a), lookup(edge.b));
  }
  // Smallest member id per root.
  std::vector<const std::string *> label(graph.nodes.size(), nullptr);
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const std::string *&best = label[sets.find(i)];
    if (!best || graph.nodes[i] < *best) best = &graph.nodes[i];
  }
  ClusterAssignment assignment;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    assignment.emplace(graph.nodes[i], *label[sets.find(i)]);
  }
  return assignment;
}

ClusterAssignment ClusterMentions(const Corpus &corpus,
                                  const std::vector<MentionPair> &edges) {
  CorefGraph graph;
  graph.nodes.reserve(corpus.size());
  for (const Mention &m : corpus.mentions()) graph.nodes.push_back(m.mention_id);
  graph.edges = edges;
  return ConnectedComponents(graph);
}

std::map<std::string, std::vector<std::string>> ClusterMembers(
    const ClusterAssignment &assignment) {
  std::map<std::string, std::vector<std::string>> members;
  for (const auto &[mention, cluster] : assignment) {
    members[cluster].push_back(mention);
  }
  return members;
}

std::string SerializeClusters(const ClusterAssignment &assignment) {
  std::string out;
  for (const auto &[mention, cluster] : assignment) {
    out += nlohmann::ordered_json{{"mention_id", mention}, {"cluster_id", cluster}}
               .dump();
    out += '\n';
  }
  return out;
}

ClusterAssignment ParseClusters(std::string_view jsonl) {
  ClusterAssignment assignment;
  auto lines = internal::SplitLines(jsonl);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (internal::IsBlank(lines[n])) continue;
    auto record = nlohmann::json::parse(lines[n], nullptr, false);
    if (record.is_discarded() || !record.is_object() ||
        !record.contains("mention_id") || !record.contains("cluster_id") ||
        !record["mention_id"].is_string() || !record["cluster_id"].is_string()) {
      throw Error(ErrorCode::kMalformedRecord,
                  "cluster line " + std::to_string(n + 1));
    }
    if (!assignment
             .emplace(record["mention_id"].get<std::string>(),
                      record["cluster_id"].get<std::string>())
             .second) {
      throw Error(ErrorCode::kDuplicateMentionId,
                  record["mention_id"].get<std::string>());
    }
  }
  return assignment;
}

std::string ToConll(const Corpus &corpus, const ClusterAssignment &assignment,
                    std::string_view document_name) {
  std::map<std::string, std::size_t> numbers;
  for (const auto &[mention, cluster] : assignment) numbers.emplace(cluster, 0);
  std::size_t next = 0;
  for (auto &[cluster, number] : numbers) number = next++;

  std::string out = "#begin document (" + std::string(document_name) +
                    "); part 000\n";
  for (const Mention &m : corpus.mentions()) {
    auto it = assignment.find(m.mention_id);
    if (it == assignment.end()) {
      throw Error(ErrorCode::kUnknownMentionId,
                  "no cluster for '" + m.mention_id + "'");
    }
    out += m.doc_id + '\t' + m.mention_id + "\t(" +
           std::to_string(numbers[it->second]) + ")\n";
  }
  out += "#end document\n";
  return out;
}

ClusterAssignment ParseConll(std::string_view text) {
  ClusterAssignment assignment;
  auto lines = internal::SplitLines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    std::string_view line = lines[n];
    if (internal::IsBlank(line) || line.front() == '#') continue;
    std::istringstream fields{std::string(line)};
    std::vector<std::string> columns;
    for (std::string column; fields >> column;) columns.push_back(column);
    const std::string &last = columns.empty() ? std::string() : columns.back();
    if (columns.size() < 3 || last.size() < 3 || last.front() != '(' ||
        last.back() != ')') {
      throw Error(ErrorCode::kMalformedRecord,
                  "conll line " + std::to_string(n + 1));
    }
    if (!assignment.emplace(columns[1], last.substr(1, last.size() - 2))
             .second) {
      throw Error(ErrorCode::kDuplicateMentionId, columns[1]);
    }
  }
  return assignment;
}

}  // namespace lemmacoref
