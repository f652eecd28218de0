#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "lemmacoref/error.h"
#include "lemmacoref/pipeline.h"

using namespace lemmacoref;
namespace fs = std::filesystem;

namespace {

const std::string kSource = LEMMACOREF_SOURCE_DIR;
const std::string kScorer = std::string(LEMMACOREF_BINARY_DIR) + "/tools/constant_scorer";

std::string Slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig MiniConfig(const std::string &name) {
  RunConfig cfg;
  cfg.corpus_path = kSource + "/data/mini_corpus.jsonl";
  cfg.documents_path = kSource + "/data/mini_documents.jsonl";
  cfg.heuristic.stop_lemmas = DefaultStopLemmas();
  cfg.out_dir = (fs::temp_directory_path() / ("lemmacoref_pipeline_" + name)).string();
  fs::remove_all(cfg.out_dir);
  return cfg;
}

}  // namespace

TEST_CASE("default grid") {
  auto grid = DefaultThresholdGrid();
  REQUIRE(grid.size() == 51);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 0.5);
}

TEST_CASE("run without a scorer reports the baseline only") {
  RunConfig cfg = MiniConfig("lh");
  RunSummary s = RunPipeline(cfg);
  CHECK_FALSE(s.discriminator_report.has_value());
  CHECK(fs::exists(fs::path(cfg.out_dir) / "report_lh.json"));
  CHECK(fs::exists(fs::path(cfg.out_dir) / "requests.jsonl"));
  CHECK_FALSE(fs::exists(fs::path(cfg.out_dir) / "report_d.json"));
  CHECK(s.categories.total() == s.pairs);
}

TEST_CASE("identity scorer reproduces the heuristic clusters") {
  RunConfig cfg = MiniConfig("one");
  cfg.scorer_command = kScorer + " 1.0";
  RunSummary s = RunPipeline(cfg);
  REQUIRE(s.discriminator_report.has_value());
  const fs::path out = cfg.out_dir;
  CHECK(Slurp(out / "clusters_d.jsonl") == Slurp(out / "clusters_lh.jsonl"));
  CHECK(Slurp(out / "report_d.json") == Slurp(out / "report_lh.json"));
  CHECK(s.discriminator_report->conll_f1 == s.heuristic_report.conll_f1);
}

TEST_CASE("zero scorer leaves singletons") {
  RunConfig cfg = MiniConfig("zero");
  cfg.scorer_command = kScorer + " 0.0";
  RunPipeline(cfg);
  auto clusters = ParseClusters(Slurp(fs::path(cfg.out_dir) / "clusters_d.jsonl"));
  CHECK_FALSE(clusters.empty());
  for (const auto &[m, c] : clusters) CHECK(m == c);
}

TEST_CASE("fixed threshold skips tuning") {
  RunConfig cfg = MiniConfig("fixed");
  cfg.threshold = 0.1;
  RunSummary s = RunPipeline(cfg);
  CHECK(s.threshold == 0.1);
  CHECK_FALSE(fs::exists(fs::path(cfg.out_dir) / "tune.json"));
}

TEST_CASE("no dev split and no threshold") {
  RunConfig cfg = MiniConfig("nodev");
  Corpus c = LoadCorpus(cfg.corpus_path, std::set{Split::kTrain, Split::kTest});
  const std::string path = cfg.out_dir + "_corpus.jsonl";
  WriteCorpus(c, path);
  cfg.corpus_path = path;
  cfg.documents_path.reset();
  try {
    RunPipeline(cfg);
    FAIL("expected InvalidConfig");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kInvalidConfig);
  }
}

TEST_CASE("failing scorer") {
  RunConfig cfg = MiniConfig("fail");
  cfg.threshold = 0.0;
  cfg.scorer_command = "false";
  try {
    RunPipeline(cfg);
    FAIL("expected ScorerFailure");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kScorerFailure);
  }
  cfg.scorer_command = "true";
  CHECK_THROWS_AS(RunPipeline(cfg), Error);
}

TEST_CASE("exported training pairs match recategorization") {
  RunConfig cfg = MiniConfig("train");
  TrainExportSummary s = ExportTrainingPairs(cfg);
  const Corpus corpus = LoadCorpus(cfg.corpus_path);
  std::ifstream in(fs::path(cfg.out_dir) / "train_pairs.jsonl");
  std::size_t ones = 0, zeros = 0;
  for (std::string line; std::getline(in, line);) {
    auto j = nlohmann::json::parse(line);
    const std::string a = j.at("a"), b = j.at("b");
    CHECK(corpus.at(a).split == Split::kTrain);
    const bool coref = corpus.gold().at(a) == corpus.gold().at(b);
    CHECK(j.at("label").get<int>() == (coref ? 1 : 0));
    CHECK(j.at("category").get<std::string>() == (coref ? "p_easy" : "p_hard"));
    CHECK(j.at("context_ab").at("text").get<std::string>().find("<m>") != std::string::npos);
    CHECK(j.at("context_ba").at("trigger_spans").size() == 2);
    (coref ? ones : zeros)++;
  }
  CHECK(ones == s.positives);
  CHECK(zeros == s.negatives);

  // Independent recount: train pairs positive at the tuned threshold.
  HeuristicConfig h = cfg.heuristic;
  h.threshold = s.threshold;
  const Corpus train = corpus.filter({Split::kTrain});
  auto verdicts = ClassifyPairs(AllPairs(train, TopicKey::kTopic), train,
                                ExtractSynPairs(corpus, {Split::kTrain}, TopicKey::kTopic), h);
  std::size_t easy = 0, hard = 0;
  for (const auto &v : verdicts) {
    if (!v.positive) continue;
    (train.gold().at(v.pair.a) == train.gold().at(v.pair.b) ? easy : hard)++;
  }
  CHECK(easy == s.positives);
  CHECK(hard == s.negatives);
}
