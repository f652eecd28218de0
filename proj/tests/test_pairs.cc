#include <random>
#include <set>

#include "doctest.h"
#include "lemmacoref/error.h"
#include "lemmacoref/heuristic.h"
#include "lemmacoref/pairs.h"
#include "lemmacoref/syn_pairs.h"
#include "testing/oracles.h"
#include "testing/synthetic.h"

using namespace lemmacoref;
using testing::MakeMention;

namespace {

Corpus Build(std::vector<Mention> ms) {
  GoldClusterMap gold;
  for (const auto &m : ms) gold[m.mention_id] = "c_" + m.mention_id;
  return Corpus(std::move(ms), std::move(gold));
}

}  // namespace

TEST_CASE("make pair canonicalizes") {
  MentionPair p = MakePair("m9", "m10");
  CHECK(p.a == "m10");
  CHECK(p.b == "m9");
  CHECK_THROWS_AS(MakePair("x", "x"), Error);
}

TEST_CASE("one topic of four gives six pairs") {
  Corpus c = Build({MakeMention("a", "t", "x", "x", {"x"}), MakeMention("b", "t", "x", "x", {"x"}),
                    MakeMention("c", "t", "x", "x", {"x"}), MakeMention("d", "t", "x", "x", {"x"})});
  CHECK(AllPairs(c, TopicKey::kTopic).size() == 6);
}

TEST_CASE("topics of three and two give four pairs") {
  Corpus c = Build({MakeMention("a", "t1", "x", "x", {"x"}), MakeMention("b", "t1", "x", "x", {"x"}),
                    MakeMention("c", "t1", "x", "x", {"x"}), MakeMention("d", "t2", "x", "x", {"x"}),
                    MakeMention("e", "t2", "x", "x", {"x"})});
  auto pairs = AllPairs(c, TopicKey::kTopic);
  REQUIRE(pairs.size() == 4);
  for (const auto &p : pairs) CHECK(c.at(p.a).topic_id == c.at(p.b).topic_id);
  CHECK(std::is_sorted(pairs.begin(), pairs.end()));
}

TEST_CASE("subtopic key requires subtopics") {
  Corpus c = Build({MakeMention("a", "t1", "x", "x", {"x"}), MakeMention("b", "t1", "x", "x", {"x"})});
  try {
    AllPairs(c, TopicKey::kSubtopic);
    FAIL("expected MissingGroupKey");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kMissingGroupKey);
  }
}

TEST_CASE("topic override regroups mentions") {
  Corpus c = Build({MakeMention("a", "t1", "x", "x", {"x"}), MakeMention("b", "t2", "x", "x", {"x"}),
                    MakeMention("c", "t2", "x", "x", {"x"})});
  TopicOverride predicted = {{"a", "p"}, {"b", "p"}, {"c", "q"}};
  auto pairs = AllPairs(c, TopicKey::kTopic, &predicted);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0] == MentionPair{"a", "b"});
  TopicOverride partial = {{"a", "p"}};
  CHECK_THROWS_AS(AllPairs(c, TopicKey::kTopic, &partial), Error);
}

TEST_CASE("all pairs count equals nested-loop enumeration") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto cs = testing::RandomBlockingCase(rng, 60);
    for (TopicKey key : {TopicKey::kTopic, TopicKey::kSubtopic}) {
      std::size_t expected = 0;
      const auto &ms = cs.corpus.mentions();
      for (std::size_t i = 0; i < ms.size(); ++i) {
        for (std::size_t j = i + 1; j < ms.size(); ++j) {
          expected += key == TopicKey::kTopic ? ms[i].topic_id == ms[j].topic_id
                                              : ms[i].subtopic_id == ms[j].subtopic_id;
        }
      }
      auto pairs = AllPairs(cs.corpus, key);
      CHECK(pairs.size() == expected);
      CHECK(std::set<MentionPair>(pairs.begin(), pairs.end()).size() == pairs.size());
    }
  }
}

TEST_CASE("candidates: equal lemma bucket only") {
  Corpus c = Build({MakeMention("a", "t", "shoot", "shot", {"x"}),
                    MakeMention("b", "t", "shoot", "shooting", {"x"}),
                    MakeMention("c", "t", "kill", "killed", {"x"})});
  auto pairs = GenerateCandidates(c, TopicKey::kTopic, SynPairSet());
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0] == MentionPair{"a", "b"});
}

TEST_CASE("candidates: syn pair") {
  Corpus c = Build({MakeMention("a", "t", "shoot", "shot", {"x"}),
                    MakeMention("b", "t", "fire", "fired", {"x"})});
  SynPairSet syn;
  syn.add("shoot", "fire");
  CHECK(GenerateCandidates(c, TopicKey::kTopic, syn).size() == 1);
  CHECK(GenerateCandidates(c, TopicKey::kTopic, SynPairSet()).empty());
}

TEST_CASE("candidates: containment in either direction") {
  Corpus c = Build({MakeMention("a", "t", "gun", "gun", {"x"}),
                    MakeMention("b", "t", "shoot", "Gunned down", {"x"}),
                    MakeMention("c", "t2", "shoot", "gunned", {"x"})});
  auto pairs = GenerateCandidates(c, TopicKey::kTopic, SynPairSet());
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0] == MentionPair{"a", "b"});
}

TEST_CASE("candidates equal the brute-force rule filter") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    auto cs = testing::RandomBlockingCase(rng, 200);
    for (TopicKey key : {TopicKey::kTopic, TopicKey::kSubtopic}) {
      auto fast = GenerateCandidates(cs.corpus, key, cs.syn);
      CHECK(std::is_sorted(fast.begin(), fast.end()));
      std::set<MentionPair> got(fast.begin(), fast.end());
      CHECK(got.size() == fast.size());
      CHECK(got == testing::BruteForceCandidates(cs.corpus, key, cs.syn));
    }
  }
}

TEST_CASE("candidates are deterministic under mention reordering") {
  std::mt19937_64 rng(23);
  auto cs = testing::RandomBlockingCase(rng, 150);
  auto expected = GenerateCandidates(cs.corpus, TopicKey::kTopic, cs.syn);
  std::vector<Mention> shuffled = cs.corpus.mentions();
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  Corpus reordered(shuffled, cs.corpus.gold());
  CHECK(GenerateCandidates(reordered, TopicKey::kTopic, cs.syn) == expected);
}

TEST_CASE("blocking stats count bucket work") {
  auto cs = testing::ScalingCase(400, 4, 1);
  BlockingStats stats;
  auto pairs = GenerateCandidates(cs.corpus, TopicKey::kTopic, cs.syn, nullptr, &stats);
  CHECK(stats.pair_evaluations >= pairs.size());
  CHECK(stats.substring_probes > 0);
  // Far fewer than the 79800 pairs of the topic.
  CHECK(stats.pair_evaluations < 79800 / 10);
}

TEST_CASE("serialized pairs") {
  CHECK(SerializePairs({{"a", "b"}, {"a", "c"}}) ==
        "{\"a\":\"a\",\"b\":\"b\"}\n{\"a\":\"a\",\"b\":\"c\"}\n");
  CHECK(SerializePairs({}).empty());
}
