#ifndef LEMMACOREF_CLUSTERING_H_
#define LEMMACOREF_CLUSTERING_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lemmacoref/corpus.h"
#include "lemmacoref/pairs.h"

namespace lemmacoref {

// Undirected coreference graph: A_H when edges are heuristic positives, A_P
// when they are discriminator decisions.
struct CorefGraph {
  std::vector<std::string> nodes;
  std::vector<MentionPair> edges;
};

// mention_id -> predicted cluster id (the smallest member mention_id).
using ClusterAssignment = std::map<std::string, std::string>;

// Throws Error(kUnknownMentionId) for edges touching unknown nodes and
// Error(kInvalidConfig) for self-loops or duplicate nodes.
ClusterAssignment ConnectedComponents(const CorefGraph &graph);

// Nodes are all corpus mentions.
ClusterAssignment ClusterMentions(const Corpus &corpus,
                                  const std::vector<MentionPair> &edges);

// cluster id -> sorted members, clusters ordered by id.
std::map<std::string, std::vector<std::string>> ClusterMembers(
    const ClusterAssignment &assignment);

// JSON Lines {mention_id, cluster_id}, sorted by mention_id.
std::string SerializeClusters(const ClusterAssignment &assignment);
ClusterAssignment ParseClusters(std::string_view jsonl);

// Single-document CoNLL file: one line per mention, "doc_id mention_id (n)",
// where n numbers the clusters in id order.
std::string ToConll(const Corpus &corpus, const ClusterAssignment &assignment,
                    std::string_view document_name = "corpus");
// mention_id -> cluster label read from the last column of such a file.
ClusterAssignment ParseConll(std::string_view text);

}  // namespace lemmacoref

#endif  // LEMMACOREF_CLUSTERING_H_
