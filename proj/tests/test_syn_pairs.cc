#include <random>

#include "doctest.h"
#include "lemmacoref/error.h"
#include "lemmacoref/syn_pairs.h"
#include "testing/oracles.h"
#include "testing/synthetic.h"

using namespace lemmacoref;
using testing::MakeMention;

namespace {

// One mention per (cluster, lemma) entry, all in one train topic.
Corpus Chains(const std::vector<std::pair<std::string, std::string>> &entries) {
  std::vector<Mention> ms;
  GoldClusterMap gold;
  int i = 0;
  for (const auto &[cluster, lemma] : entries) {
    const std::string id = "m" + std::to_string(i++);
    ms.push_back(MakeMention(id, "t", lemma, lemma, {lemma}));
    gold[id] = cluster;
  }
  return Corpus(ms, gold);
}

}  // namespace

TEST_CASE("equal lemmas produce nothing") {
  auto syn = ExtractSynPairs(Chains({{"c", "die"}, {"c", "die"}}), {Split::kTrain},
                             TopicKey::kTopic);
  CHECK(syn.empty());
}

TEST_CASE("one differing coreferent pair") {
  auto syn = ExtractSynPairs(Chains({{"c", "die"}, {"c", "kill"}}), {Split::kTrain},
                             TopicKey::kTopic);
  REQUIRE(syn.size() == 1);
  CHECK(syn.contains("die", "kill"));
  CHECK(syn.contains("kill", "die"));
  CHECK_FALSE(syn.contains("die", "die"));
}

TEST_CASE("min count keeps frequent pairs") {
  Corpus c = Chains({{"c1", "die"}, {"c1", "kill"}, {"c2", "die"}, {"c2", "kill"},
                     {"c3", "kill"}, {"c3", "die"}, {"c4", "die"}, {"c4", "perish"}});
  auto syn = ExtractSynPairs(c, {Split::kTrain}, TopicKey::kTopic, 2);
  auto oracle = testing::BruteForceSynCounts(c, {Split::kTrain}, TopicKey::kTopic);
  CHECK(oracle.at({"die", "kill"}) == 3);
  CHECK(oracle.at({"die", "perish"}) == 1);
  REQUIRE(syn.size() == 1);
  CHECK(syn.contains("die", "kill"));
  CHECK(syn.entries().at({"die", "kill"}) == 3);
}

TEST_CASE("pairs are harvested within the grouping key only") {
  std::vector<Mention> ms = {MakeMention("a", "t1", "die", "died", {"x"}),
                             MakeMention("b", "t2", "kill", "killed", {"x"})};
  Corpus c(ms, {{"a", "c"}, {"b", "c"}});
  CHECK(ExtractSynPairs(c, {Split::kTrain}, TopicKey::kTopic).empty());
}

TEST_CASE("empty split selection") {
  Corpus c = Chains({{"c", "die"}});
  try {
    ExtractSynPairs(c, {}, TopicKey::kTopic);
    FAIL("expected EmptySplitSelection");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kEmptySplitSelection);
  }
  CHECK_THROWS_AS(ExtractSynPairs(c, {Split::kTrain}, TopicKey::kTopic, 0), Error);
}

TEST_CASE("counts equal brute-force enumeration") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    testing::EventCorpusOptions opt;
    opt.synonym_rate = 0.6;
    auto generated = testing::MakeEventCorpus(opt, seed);
    for (TopicKey key : {TopicKey::kTopic, TopicKey::kSubtopic}) {
      std::set<Split> all = {Split::kTrain, Split::kDev, Split::kTest};
      auto syn = ExtractSynPairs(generated.corpus, all, key);
      auto oracle = testing::BruteForceSynCounts(generated.corpus, all, key);
      CHECK(syn.entries() == oracle);
    }
  }
}

TEST_CASE("oracle set dominates the train set") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    testing::EventCorpusOptions opt;
    opt.synonym_rate = 0.6;
    const Corpus c = testing::MakeEventCorpus(opt, seed).corpus;
    for (std::size_t min_count : {1, 2, 3}) {
      auto train = ExtractSynPairs(c, {Split::kTrain}, TopicKey::kTopic, min_count);
      auto oracle = ExtractSynPairs(c, {Split::kTrain, Split::kDev, Split::kTest},
                                    TopicKey::kTopic, min_count);
      for (const auto &[pair, count] : train.entries()) {
        CHECK(oracle.contains(pair.first, pair.second));
        CHECK(oracle.entries().at(pair) >= count);
      }
    }
  }
}

TEST_CASE("extraction ignores mention order") {
  std::mt19937_64 rng(9);
  const Corpus c = testing::MakeEventCorpus({}, 4).corpus;
  auto expected = ExtractSynPairs(c, {Split::kTrain}, TopicKey::kTopic);
  for (int i = 0; i < 5; ++i) {
    std::vector<Mention> shuffled = c.mentions();
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(ExtractSynPairs(Corpus(shuffled, c.gold()), {Split::kTrain}, TopicKey::kTopic) ==
          expected);
  }
}

TEST_CASE("tsv round trip") {
  SynPairSet syn;
  syn.add("kill", "die", 3);
  syn.add("fire", "shoot");
  syn.add("same", "same");
  const std::string tsv = SerializeSynPairs(syn);
  CHECK(tsv == "die\tkill\t3\nfire\tshoot\t1\n");
  CHECK(ParseSynPairs(tsv) == syn);
  CHECK(ParseSynPairs(tsv, 2).size() == 1);
  CHECK(syn.partners("shoot") == std::vector<std::string>{"fire"});
  CHECK(syn.partners("absent").empty());
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    testing::EventCorpusOptions opt;
    opt.synonym_rate = 0.6;
    auto s = ExtractSynPairs(testing::MakeEventCorpus(opt, seed).corpus,
                             {Split::kTrain}, TopicKey::kTopic);
    CHECK(ParseSynPairs(SerializeSynPairs(s)) == s);
  }
}

TEST_CASE("malformed tsv") {
  CHECK_THROWS_AS(ParseSynPairs("die\tkill\n"), Error);
  CHECK_THROWS_AS(ParseSynPairs("die\tkill\tmany\n"), Error);
  CHECK_THROWS_AS(ParseSynPairs("die\tdie\t1\n"), Error);
}
