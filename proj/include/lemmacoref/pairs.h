#ifndef LEMMACOREF_PAIRS_H_
#define LEMMACOREF_PAIRS_H_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lemmacoref/corpus.h"

namespace lemmacoref {

class SynPairSet;

// Unordered mention pair stored once, with a < b lexicographically.
struct MentionPair {
  std::string a;
  std::string b;

  auto operator<=>(const MentionPair &other) const = default;
};

// Canonicalizes the order. Throws Error(kInvalidConfig) when x == y.
MentionPair MakePair(std::string x, std::string y);

enum class TopicKey { kTopic, kSubtopic };

TopicKey ParseTopicKey(std::string_view name);

// mention_id -> predicted topic, replacing the gold grouping field.
using TopicOverride = std::map<std::string, std::string>;

// Grouping value of each mention, in corpus order. Throws
// Error(kMissingGroupKey) for an absent subtopic or uncovered override.
std::vector<std::string> GroupKeys(const Corpus &corpus, TopicKey key,
                                   const TopicOverride *topic_override = nullptr);

// Every within-group pair, sorted.
std::vector<MentionPair> AllPairs(const Corpus &corpus, TopicKey key,
                                  const TopicOverride *topic_override = nullptr);

struct BlockingStats {
  // Mention pairs emitted by bucket probes, duplicates included.
  std::size_t pair_evaluations = 0;
  // Hash lookups of trigger substrings against the lemma buckets.
  std::size_t substring_probes = 0;
};

// Within-group pairs passing any trigger-match rule, found through lemma
// buckets: the same lemma, syn-paired lemmas, and lemmas occurring as a
// substring of the other mention's trigger. Non-matching cross-bucket pairs
// are never visited. Sorted.
std::vector<MentionPair> GenerateCandidates(
    const Corpus &corpus, TopicKey key, const SynPairSet &syn,
    const TopicOverride *topic_override = nullptr,
    BlockingStats *stats = nullptr);

std::string SerializePairs(const std::vector<MentionPair> &pairs);

}  // namespace lemmacoref

#endif  // LEMMACOREF_PAIRS_H_
