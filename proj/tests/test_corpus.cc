#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "lemmacoref/corpus.h"
#include "lemmacoref/error.h"
#include "testing/synthetic.h"

using namespace lemmacoref;

namespace {

const char *kLine1 =
    R"({"mention_id":"m1","doc_id":"d1","topic_id":"t1","sentence_id":0,)"
    R"("trigger_text":"shot","head_lemma":"shoot","sentence_lemmas":["man","shoot"],)"
    R"("gold_cluster_id":"c1","split":"train"})";
const char *kLine2 =
    R"({"mention_id":"m2","doc_id":"d2","topic_id":"t1","subtopic_id":"s1","sentence_id":3,)"
    R"("trigger_text":"killed","head_lemma":"kill","sentence_lemmas":["kill","man"],)"
    R"("gold_cluster_id":"c1","split":"dev"})";

ErrorCode CodeOf(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kIo;
}

std::string Replace(std::string s, const std::string &from, const std::string &to) {
  auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("two valid lines load") {
  Corpus c = ParseCorpus(std::string(kLine1) + "\n" + kLine2 + "\n");
  REQUIRE(c.size() == 2);
  CHECK(c.at("m1").head_lemma == "shoot");
  CHECK_FALSE(c.at("m1").subtopic_id.has_value());
  CHECK(c.at("m2").subtopic_id == "s1");
  CHECK(c.at("m2").sentence_id == 3);
  CHECK(c.at("m2").split == Split::kDev);
  CHECK(c.gold().at("m2") == "c1");
}

TEST_CASE("split filter keeps requested splits") {
  Corpus c = ParseCorpus(std::string(kLine1) + "\n" + kLine2, std::set{Split::kDev});
  REQUIRE(c.size() == 1);
  CHECK(c.mentions()[0].mention_id == "m2");
  CHECK(c.gold().size() == 1);
}

TEST_CASE("blank lines are ignored") {
  Corpus c = ParseCorpus(std::string("\n") + kLine1 + "\n\n" + kLine2 + "\n\n");
  CHECK(c.size() == 2);
}

TEST_CASE("duplicate mention id") {
  CHECK(CodeOf([] { ParseCorpus(std::string(kLine1) + "\n" + kLine1); }) ==
        ErrorCode::kDuplicateMentionId);
}

TEST_CASE("missing gold label") {
  std::string no_gold = Replace(kLine1, R"(,"gold_cluster_id":"c1")", "");
  CHECK(CodeOf([&] { ParseCorpus(no_gold); }) == ErrorCode::kMissingGoldLabel);
  std::string null_gold = Replace(kLine1, R"("gold_cluster_id":"c1")", R"("gold_cluster_id":null)");
  CHECK(CodeOf([&] { ParseCorpus(null_gold); }) == ErrorCode::kMissingGoldLabel);
}

TEST_CASE("malformed records report the line") {
  std::string text = std::string(kLine1) + "\n{not json\n";
  try {
    ParseCorpus(text);
    FAIL("expected MalformedRecord");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kMalformedRecord);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK(CodeOf([] { ParseCorpus(Replace(kLine1, R"("split":"train")", R"("split":"val")")); }) ==
        ErrorCode::kMalformedRecord);
  CHECK(CodeOf([] { ParseCorpus(Replace(kLine1, R"("sentence_id":0)", R"("sentence_id":-1)")); }) ==
        ErrorCode::kMalformedRecord);
  CHECK(CodeOf([] { ParseCorpus(Replace(kLine1, R"("head_lemma":"shoot")", R"("head_lemma":"")")); }) ==
        ErrorCode::kMalformedRecord);
  CHECK(CodeOf([] { ParseCorpus(Replace(kLine1, R"("head_lemma":"shoot")", R"("head_lemma":"Shoot")")); }) ==
        ErrorCode::kMalformedRecord);
  CHECK(CodeOf([] { ParseCorpus(Replace(kLine1, R"("trigger_text":"shot")", R"("trigger_text":"")")); }) ==
        ErrorCode::kMalformedRecord);
  CHECK(CodeOf([] { ParseCorpus(Replace(kLine1, R"("sentence_lemmas":["man","shoot"])", R"("sentence_lemmas":[])")); }) ==
        ErrorCode::kMalformedRecord);
  CHECK(CodeOf([] { ParseCorpus(Replace(kLine1, R"("split":"train")", R"("split":"train","extra":1)")); }) ==
        ErrorCode::kMalformedRecord);
  CHECK(CodeOf([] { ParseCorpus(Replace(kLine1, R"("doc_id":"d1",)", "")); }) ==
        ErrorCode::kMalformedRecord);
  CHECK(CodeOf([] { ParseCorpus(R"(["not","an","object"])"); }) == ErrorCode::kMalformedRecord);
}

TEST_CASE("corpus constructor enforces gold coverage") {
  std::vector<Mention> ms = {testing::MakeMention("a", "t", "x", "x", {"x"})};
  CHECK(CodeOf([&] { Corpus(ms, {}); }) == ErrorCode::kMissingGoldLabel);
  CHECK(CodeOf([&] { Corpus(ms, {{"a", "c"}, {"b", "c"}}); }) == ErrorCode::kDanglingReference);
  CHECK(CodeOf([&] { Corpus(ms, {{"a", "c"}}, {{"other", {"x"}}}); }) ==
        ErrorCode::kDanglingReference);
  CHECK_NOTHROW(Corpus(ms, {{"a", "c"}}, {{"doc_a", {"x"}}}));
}

TEST_CASE("unknown mention lookup") {
  Corpus c = ParseCorpus(kLine1);
  CHECK_FALSE(c.find("zz").has_value());
  CHECK(CodeOf([&] { c.at("zz"); }) == ErrorCode::kUnknownMentionId);
}

TEST_CASE("missing file is an io error") {
  CHECK(CodeOf([] { LoadCorpus("/nonexistent/corpus.jsonl"); }) == ErrorCode::kIo);
}

TEST_CASE("three mentions in one cluster") {
  std::vector<Mention> ms;
  GoldClusterMap gold;
  for (const char *id : {"a", "b", "c"}) {
    Mention m = testing::MakeMention(id, "t", "x", "x", {"x"});
    m.doc_id = "d";
    ms.push_back(m);
    gold[id] = "c1";
  }
  auto stats = Stats(Corpus(ms, gold));
  REQUIRE(stats.count(Split::kTrain));
  CHECK(stats[Split::kTrain].clusters == 1);
  CHECK(stats[Split::kTrain].singletons == 0);
  CHECK(stats[Split::kTrain].mentions == 3);
  CHECK(stats[Split::kTrain].documents == 1);
  CHECK(stats[Split::kTrain].topics == 1);
}

TEST_CASE("write then load round-trips") {
  auto generated = testing::MakeEventCorpus({}, 11);
  auto dir = std::filesystem::temp_directory_path() / "lemmacoref_corpus_rt";
  std::filesystem::create_directories(dir);
  const std::string corpus_path = (dir / "c.jsonl").string();
  const std::string docs_path = (dir / "d.jsonl").string();
  WriteCorpus(generated.corpus, corpus_path);
  std::ofstream(docs_path) << SerializeDocuments(generated.documents);
  Corpus back = LoadCorpus(corpus_path, std::nullopt, docs_path);
  CHECK(back == generated.corpus);
  CHECK(SerializeCorpus(back) == SerializeCorpus(generated.corpus));
  CHECK(LoadDocuments(docs_path) == generated.documents);
}

TEST_CASE("stats properties on synthetic corpora") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto generated = testing::MakeEventCorpus({}, 100 + trial);
    const Corpus &c = generated.corpus;
    auto stats = Stats(c);

    // Sum of cluster sizes equals mention count per split.
    for (auto [split, s] : stats) {
      std::map<std::string, std::size_t> sizes;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c.mentions()[i].split == split) ++sizes[c.gold_cluster(i)];
      }
      std::size_t total = 0, singletons = 0;
      for (auto [id, n] : sizes) {
        total += n;
        singletons += n == 1;
      }
      CHECK(total == s.mentions);
      CHECK(sizes.size() == s.clusters);
      CHECK(singletons == s.singletons);
    }

    // Invariant under reordering of the file.
    std::vector<Mention> shuffled = c.mentions();
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(Stats(Corpus(shuffled, c.gold(), c.documents())) == stats);
  }
}

TEST_CASE("split names") {
  CHECK(ParseSplitList("train,dev") == std::set{Split::kTrain, Split::kDev});
  CHECK(ParseSplit("test") == Split::kTest);
  CHECK(SplitName(Split::kDev) == "dev");
  CHECK(CodeOf([] { ParseSplit("validation"); }) == ErrorCode::kInvalidConfig);
}
