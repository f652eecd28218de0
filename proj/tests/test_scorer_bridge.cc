#include <filesystem>
#include <random>

#include "doctest.h"
#include "lemmacoref/error.h"
#include "lemmacoref/scorer_bridge.h"
#include "testing/synthetic.h"

using namespace lemmacoref;
using testing::MakeMention;

namespace {

ErrorCode CodeOf(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kIo;
}

PairVerdict Positive(std::string a, std::string b) {
  PairVerdict v;
  v.pair = MakePair(std::move(a), std::move(b));
  v.positive = true;
  v.rule = MatchRule::kEqualLemma;
  return v;
}

Corpus Small() {
  std::vector<Mention> ms = {
      MakeMention("a", "t", "shoot", "shot", {"the", "man", "shoot", "police"}),
      MakeMention("b", "t", "shoot", "gunned down", {"police", "shoot", "man"}),
      MakeMention("c", "t", "kill", "killed", {"kill", "man"}),
      MakeMention("d", "t", "attack", "Attack", {"storm", "hit"})};
  ms[0].doc_id = ms[1].doc_id = "d1";
  ms[1].sentence_id = 1;
  DocumentMap docs = {{"d1", {"the", "man", "shoot", "police", "police", "shoot", "man"}},
                      {"doc_c", {"kill", "man"}},
                      {"doc_d", {"storm", "hit"}}};
  return Corpus(ms, {{"a", "1"}, {"b", "1"}, {"c", "2"}, {"d", "3"}}, docs);
}

}  // namespace

TEST_CASE("no positives give an empty request file") {
  Corpus c = Small();
  auto dir = std::filesystem::temp_directory_path() / "lemmacoref_bridge";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "empty.jsonl").string();
  PairVerdict negative;
  negative.pair = {"a", "b"};
  CHECK(ExportRequests({negative}, c, ContextMode::kSentence, path) == 0);
  CHECK(std::filesystem::file_size(path) == 0);
  CHECK(ParseRequests("").empty());
}

TEST_CASE("three positives give three request lines") {
  Corpus c = Small();
  auto requests = BuildRequests({Positive("a", "b"), Positive("a", "c"), Positive("b", "c")}, c,
                                ContextMode::kSentence);
  REQUIRE(requests.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(requests[i].pair_id == i);
  const std::string text = SerializeRequests(requests);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  CHECK(ParseRequests(text) == requests);
}

TEST_CASE("contexts wrap triggers in markers") {
  Corpus c = Small();
  MarkedContext a = MentionContext(c.at("a"), c, ContextMode::kSentence);
  CHECK(a.text == "the man <m> shot </m> police");
  REQUIRE(a.trigger_spans.size() == 1);
  CHECK(a.text.substr(a.trigger_spans[0].first,
                      a.trigger_spans[0].second - a.trigger_spans[0].first) == "shot");

  auto requests = BuildRequests({Positive("a", "b")}, c, ContextMode::kSentence);
  const auto &r = requests[0];
  CHECK(r.context_ab.text == "the man <m> shot </m> police\npolice <m> gunned down </m> man");
  CHECK(r.context_ba.text == "police <m> gunned down </m> man\nthe man <m> shot </m> police");
  for (const auto *ctx : {&r.context_ab, &r.context_ba}) {
    REQUIRE(ctx->trigger_spans.size() == 2);
    for (auto [b, e] : ctx->trigger_spans) {
      CHECK(ctx->text.substr(b - 4, 4) == "<m> ");
      CHECK(ctx->text.substr(e, 5) == " </m>");
    }
  }
}

TEST_CASE("document context") {
  Corpus c = Small();
  MarkedContext b = MentionContext(c.at("b"), c, ContextMode::kDocument);
  CHECK(b.text == "the man shoot police police <m> gunned down </m> man");
  MarkedContext missing_head = MentionContext(
      MakeMention("z", "t", "eat", "ate", {"lunch"}), c, ContextMode::kSentence);
  CHECK(missing_head.text == "<m> ate </m> lunch");

  std::vector<Mention> ms = {MakeMention("x", "t", "eat", "ate", {"eat"})};
  Corpus no_docs(ms, {{"x", "1"}});
  CHECK(CodeOf([&] { MentionContext(no_docs.at("x"), no_docs, ContextMode::kDocument); }) ==
        ErrorCode::kMissingDocumentText);
}

TEST_CASE("symmetric score") {
  CHECK(SymmetricScore(0.8, 0.6) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(SymmetricScore(0.5, 0.5) == 0.5);
}

TEST_CASE("score parsing and validation") {
  Corpus c = Small();
  auto requests = BuildRequests({Positive("a", "b"), Positive("a", "c")}, c, ContextMode::kSentence);
  auto records = ParseScores(
      "{\"pair_id\":1,\"score_ab\":0.5,\"score_ba\":0.5}\n"
      "{\"pair_id\":0,\"score_ab\":0.8,\"score_ba\":0.6}\n",
      requests);
  REQUIRE(records.size() == 2);
  CHECK(records[0].pair == MentionPair{"a", "b"});
  CHECK(std::abs(records[0].symmetric - 0.7) < 1e-12);
  CHECK(records[1].symmetric == 0.5);

  CHECK(CodeOf([&] {
          ParseScores("{\"pair_id\":0,\"score_ab\":1.2,\"score_ba\":0.5}\n"
                      "{\"pair_id\":1,\"score_ab\":0.5,\"score_ba\":0.5}\n",
                      requests);
        }) == ErrorCode::kScoreOutOfRange);
  CHECK(CodeOf([&] {
          ParseScores("{\"pair_id\":0,\"score_ab\":0.5,\"score_ba\":-0.1}\n"
                      "{\"pair_id\":1,\"score_ab\":0.5,\"score_ba\":0.5}\n",
                      requests);
        }) == ErrorCode::kScoreOutOfRange);
  CHECK(CodeOf([&] { ParseScores("{\"pair_id\":0,\"score_ab\":0.5,\"score_ba\":0.5}\n", requests); }) ==
        ErrorCode::kMissingPair);
  CHECK(CodeOf([&] {
          ParseScores("{\"pair_id\":0,\"score_ab\":0.5,\"score_ba\":0.5}\n"
                      "{\"pair_id\":0,\"score_ab\":0.5,\"score_ba\":0.5}\n"
                      "{\"pair_id\":1,\"score_ab\":0.5,\"score_ba\":0.5}\n",
                      requests);
        }) == ErrorCode::kDuplicatePair);
  CHECK(CodeOf([&] { ParseScores("{\"pair_id\":7,\"score_ab\":0.5,\"score_ba\":0.5}\n", requests); }) ==
        ErrorCode::kMalformedRecord);
  CHECK(CodeOf([&] { ParseScores("{\"pair_id\":0,\"score_ab\":\"high\"}\n", requests); }) ==
        ErrorCode::kMalformedRecord);
}

TEST_CASE("decision threshold is strict") {
  std::vector<ScoreRecord> records = {
      {{"a", "b"}, 0.51, 0.51, 0.51}, {{"a", "c"}, 0.5, 0.5, 0.5}, {{"b", "c"}, 1.0, 0.0, 0.5}};
  CHECK(Decide(records) == std::vector<MentionPair>{{"a", "b"}});
}

TEST_CASE("decisions equal a direct scan and ignore score order") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ScoreRecord> records, swapped;
    std::set<MentionPair> expected;
    for (int i = 0; i < 20; ++i) {
      double ab = u(rng), ba = u(rng);
      if (i % 5 == 0) ba = 1.0 - ab;
      MentionPair p{"m" + std::to_string(i), "n" + std::to_string(i)};
      records.push_back({p, ab, ba, SymmetricScore(ab, ba)});
      swapped.push_back({p, ba, ab, SymmetricScore(ba, ab)});
      if ((ab + ba) / 2 > 0.5) expected.insert(p);
    }
    auto decided = Decide(records);
    CHECK(std::set<MentionPair>(decided.begin(), decided.end()) == expected);
    CHECK(Decide(swapped) == decided);
  }
}

TEST_CASE("decisions serialize one line per record") {
  std::vector<ScoreRecord> records = {{{"a", "b"}, 0.9, 0.3, 0.6}};
  CHECK(SerializeDecisions(records) ==
        "{\"a\":\"a\",\"b\":\"b\",\"score_ab\":0.9,\"score_ba\":0.3,\"symmetric\":0.6,"
        "\"coreferent\":true}\n");
}

TEST_CASE("context mode names") {
  CHECK(ParseContextMode("sentence") == ContextMode::kSentence);
  CHECK(ParseContextMode("document") == ContextMode::kDocument);
  CHECK_THROWS_AS(ParseContextMode("paragraph"), Error);
}
