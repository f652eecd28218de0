#include "lemmacoref/pairs.h"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "json.hpp"
#include "lemmacoref/error.h"
#include "lemmacoref/syn_pairs.h"
#include "text.h"

namespace lemmacoref {
namespace {

// Mention indices per group value, groups in sorted order.
std::map<std::string, std::vector<std::size_t>> Groups(
    const Corpus &corpus, TopicKey key, const TopicOverride *topic_override) {
  std::vector<std::string> keys = GroupKeys(corpus, key, topic_override);
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < keys.size(); ++i) groups[keys[i]].push_back(i);
  return groups;
}

std::vector<MentionPair> ToSortedPairs(
    const Corpus &corpus,
    std::vector<std::pair<std::size_t, std::size_t>> index_pairs) {
  std::sort(index_pairs.begin(), index_pairs.end());
  index_pairs.erase(std::unique(index_pairs.begin(), index_pairs.end()),
                    index_pairs.end());
  std::vector<MentionPair> pairs;
  pairs.reserve(index_pairs.size());
  for (auto [i, j] : index_pairs) {
    pairs.push_back(MakePair(corpus.mentions()[i].mention_id,
                             corpus.mentions()[j].mention_id));
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

}  // namespace

MentionPair MakePair(std::string x, std::string y) {
  if (x == y) {
    throw Error(ErrorCode::kInvalidConfig, "self pair '" + x + "'");
  }
  if (y < x) std::swap(x, y);
  return MentionPair{std::move(x), std::move(y)};
}

TopicKey ParseTopicKey(std::string_view name) {
  if (name == "topic") return TopicKey::kTopic;
  if (name == "subtopic") return TopicKey::kSubtopic;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown topic key '" + std::string(name) + "'");
}

std::vector<std::string> GroupKeys(const Corpus &corpus, TopicKey key,
                                   const TopicOverride *topic_override) {
  std::vector<std::string> keys;
  keys.reserve(corpus.size());
  for (const Mention &m : corpus.mentions()) {
    if (topic_override) {
      auto it = topic_override->find(m.mention_id);
      if (it == topic_override->end()) {
        throw Error(ErrorCode::kMissingGroupKey,
                    "no predicted topic for '" + m.mention_id + "'");
      }
      keys.push_back(it->second);
    } else if (key == TopicKey::kTopic) {
      keys.push_back(m.topic_id);
    } else {
      if (!m.subtopic_id) {
        throw Error(ErrorCode::kMissingGroupKey,
                    "no subtopic_id on '" + m.mention_id + "'");
      }
      keys.push_back(*m.subtopic_id);
    }
  }
  return keys;
}

std::vector<MentionPair> AllPairs(const Corpus &corpus, TopicKey key,
                                  const TopicOverride *topic_override) {
  std::vector<std::pair<std::size_t, std::size_t>> index_pairs;
  for (const auto &[group, members] : Groups(corpus, key, topic_override)) {
    for (std::size_t x = 0; x < members.size(); ++x) {
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        index_pairs.emplace_back(members[x], members[y]);
      }
    }
  }
  return ToSortedPairs(corpus, std::move(index_pairs));
}

std::vector<MentionPair> GenerateCandidates(const Corpus &corpus, TopicKey key,
                                            const SynPairSet &syn,
                                            const TopicOverride *topic_override,
                                            BlockingStats *stats) {
  BlockingStats local;
  std::vector<std::pair<std::size_t, std::size_t>> found;
  auto emit = [&](std::size_t i, std::size_t j) {
    ++local.pair_evaluations;
    if (i == j) return;
    found.emplace_back(std::min(i, j), std::max(i, j));
  };

  for (const auto &[group, members] : Groups(corpus, key, topic_override)) {
    std::unordered_map<std::string_view, std::vector<std::size_t>> buckets;
    std::size_t min_len = std::string::npos, max_len = 0;
    for (std::size_t i : members) {
      const std::string &lemma = corpus.mentions()[i].head_lemma;
      buckets[lemma].push_back(i);
      min_len = std::min(min_len, lemma.size());
      max_len = std::max(max_len, lemma.size());
    }

    for (const auto &[lemma, bucket] : buckets) {
      // Equal lemmas.
      for (std::size_t x = 0; x < bucket.size(); ++x) {
        for (std::size_t y = x + 1; y < bucket.size(); ++y) {
          emit(bucket[x], bucket[y]);
        }
      }
      // Syn-paired lemmas, each unordered bucket pair visited once.
      for (const std::string &partner : syn.partners(lemma)) {
        if (!(lemma < std::string_view(partner))) continue;
        auto other = buckets.find(partner);
        if (other == buckets.end()) continue;
        for (std::size_t i : bucket) {
          for (std::size_t j : other->second) emit(i, j);
        }
      }
    }

    // Containment: every lemma bucket whose lemma occurs inside this
    // mention's trigger. Covers both directions since all mentions take the
    // containing role once.
    std::unordered_set<std::string_view> probed;
    for (std::size_t b : members) {
      const std::string trigger =
          internal::LowerAscii(corpus.mentions()[b].trigger_text);
      probed.clear();
      for (std::size_t start = 0; start < trigger.size(); ++start) {
        const std::size_t longest = std::min(max_len, trigger.size() - start);
        for (std::size_t len = min_len; len <= longest; ++len) {
          std::string_view sub(trigger.data() + start, len);
          if (!probed.insert(sub).second) continue;
          ++local.substring_probes;
          auto bucket = buckets.find(sub);
          if (bucket == buckets.end()) continue;
          for (std::size_t a : bucket->second) emit(a, b);
        }
      }
    }
  }

  if (stats) *stats = local;
  return ToSortedPairs(corpus, std::move(found));
}

std::string SerializePairs(const std::vector<MentionPair> &pairs) {
  std::string out;
  for (const MentionPair &p : pairs) {
    out += nlohmann::json{{"a", p.a}, {"b", p.b}}.dump();
    out += '\n';
  }
  return out;
}

}  // namespace lemmacoref
