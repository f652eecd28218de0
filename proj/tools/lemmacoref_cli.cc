// Command-line driver for the lemma-heuristic event coreference pipeline.
//
//   lemmacoref stats        corpus statistics per split
//   lemmacoref syn-pairs    harvest synonymous lemma pairs
//   lemmacoref tune         dev-set threshold search
//   lemmacoref filter       heuristic verdicts, categories, scoring requests
//   lemmacoref export-train balanced P+easy / P-hard training pairs
//   lemmacoref cluster      connected components from verdicts or scores
//   lemmacoref evaluate     MUC, B3, CEAF_e, LEA and CoNLL F1
//   lemmacoref analyze      distributions, purity ranking, error listing
//   lemmacoref run          everything above, end to end
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 scorer failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lemmacoref/analysis.h"
#include "lemmacoref/clustering.h"
#include "lemmacoref/corpus.h"
#include "lemmacoref/error.h"
#include "lemmacoref/heuristic.h"
#include "lemmacoref/metrics.h"
#include "lemmacoref/pairs.h"
#include "lemmacoref/pipeline.h"
#include "lemmacoref/scorer_bridge.h"
#include "lemmacoref/syn_pairs.h"

namespace {

namespace fs = std::filesystem;
using namespace lemmacoref;
using nlohmann::ordered_json;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitScorer = 3;

std::string Slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void Dump(const std::string &path, const std::string &contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
    return;
  }
  if (fs::path(path).has_parent_path()) {
    fs::create_directories(fs::path(path).parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << contents;
}

// Raw flag values shared by the subcommands.
struct Flags {
  std::string corpus;
  std::string documents;
  std::string splits;
  std::string topic_key = "topic";
  std::string syn = "train";
  std::size_t min_count = 1;
  std::optional<double> threshold;
  std::string overlap = "jaccard";
  std::string stop_lemmas;
  std::string context = "sentence";
  std::string scorer;
  std::string out;
  bool exclude_same_sentence = false;
  std::vector<double> grid;
  std::string objective = "conll";
  std::uint64_t seed = 0;

  std::string verdicts, requests, scores, clusters, key, response;
};

void AddCorpus(CLI::App *cmd, Flags &f) {
  cmd->add_option("--corpus", f.corpus, "Mention corpus (JSON Lines)")->required();
  cmd->add_option("--documents", f.documents,
                  "Document sidecar (JSON Lines {doc_id, token_lemmas})");
}

void AddHeuristic(CLI::App *cmd, Flags &f) {
  cmd->add_option("--topic-key", f.topic_key, "Pair grouping field")
      ->check(CLI::IsMember({"topic", "subtopic"}));
  cmd->add_option("--syn", f.syn, "Syn-pair source: train, oracle or a TSV file");
  cmd->add_option("--min-count", f.min_count, "Minimum syn-pair count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threshold", f.threshold,
                  "Sentence-overlap threshold (tuned on dev when omitted)");
  cmd->add_option("--overlap", f.overlap, "Overlap measure")
      ->check(CLI::IsMember({"jaccard", "min"}));
  cmd->add_option("--stop-lemmas", f.stop_lemmas,
                  "Stop-lemma file (default: bundled English list)");
  cmd->add_flag("--exclude-same-sentence", f.exclude_same_sentence,
                "Never link mentions from the same sentence");
  cmd->add_option("--grid", f.grid, "Threshold grid for tuning")->delimiter(',');
  cmd->add_option("--objective", f.objective, "Tuning objective")
      ->check(CLI::IsMember({"conll", "muc", "b3", "ceafe", "lea"}));
}

RunConfig ToConfig(const Flags &f, const std::string &default_splits) {
  RunConfig config;
  config.corpus_path = f.corpus;
  if (!f.documents.empty()) config.documents_path = f.documents;
  config.splits = ParseSplitList(f.splits.empty() ? default_splits : f.splits);
  config.topic_key = ParseTopicKey(f.topic_key);
  config.syn_source = f.syn;
  config.min_count = f.min_count;
  config.threshold = f.threshold;
  config.grid = f.grid;
  config.objective = ParseTuneObjective(f.objective);
  config.heuristic.overlap = ParseOverlapMeasure(f.overlap);
  config.heuristic.stop_lemmas =
      f.stop_lemmas.empty() ? DefaultStopLemmas() : LoadStopLemmas(f.stop_lemmas);
  config.heuristic.exclude_same_sentence = f.exclude_same_sentence;
  if (f.threshold) config.heuristic.threshold = *f.threshold;
  config.context = ParseContextMode(f.context);
  if (!f.scorer.empty()) config.scorer_command = f.scorer;
  config.out_dir = f.out;
  config.seed = f.seed;
  return config;
}

Corpus LoadWith(const Flags &f, const std::set<Split> &splits) {
  return LoadCorpus(f.corpus, splits,
                    f.documents.empty() ? std::nullopt
                                        : std::optional<std::string>(f.documents));
}

std::string OutPath(const Flags &f, const std::string &name) {
  return (fs::path(f.out) / name).string();
}

ordered_json StatsJson(const Corpus &corpus) {
  ordered_json out = ordered_json::object();
  for (const auto &[split, s] : Stats(corpus)) {
    out[std::string(SplitName(split))] = {
        {"documents", s.documents}, {"mentions", s.mentions},
        {"clusters", s.clusters},   {"singletons", s.singletons},
        {"topics", s.topics},       {"subtopics", s.subtopics}};
  }
  return out;
}

int CmdStats(const Flags &f) {
  Corpus corpus = LoadCorpus(f.corpus);
  Dump(f.out, StatsJson(corpus).dump(2) + "\n");
  return 0;
}

int CmdSynPairs(const Flags &f) {
  RunConfig config = ToConfig(f, "train");
  Corpus corpus = LoadCorpus(f.corpus);
  Dump(f.out, SerializeSynPairs(ResolveSynPairs(config, corpus)));
  return 0;
}

int CmdTune(const Flags &f) {
  RunConfig config = ToConfig(f, "dev");
  config.threshold.reset();
  Corpus corpus = LoadCorpus(f.corpus);
  TuneResult result = ResolveThreshold(config, corpus, ResolveSynPairs(config, corpus));
  ordered_json grid = ordered_json::array();
  for (auto [t, v] : result.evaluated) {
    grid.push_back({{"threshold", t}, {"objective", v}});
  }
  Dump(f.out, ordered_json{{"threshold", result.threshold},
                           {"objective", result.objective},
                           {"grid", grid}}
                      .dump(2) +
                  "\n");
  return 0;
}

int CmdFilter(const Flags &f) {
  RunConfig config = ToConfig(f, "test");
  Corpus corpus = LoadCorpus(f.corpus, std::nullopt,
                             config.documents_path);
  SynPairSet syn = ResolveSynPairs(config, corpus);
  config.heuristic.threshold = ResolveThreshold(config, corpus, syn).threshold;
  Corpus eval = corpus.filter(config.splits);
  std::vector<PairVerdict> verdicts = ClassifyPairs(
      AllPairs(eval, config.topic_key), eval, syn, config.heuristic);
  Categorization categories = CategorizePairs(verdicts, eval.gold());
  fs::create_directories(f.out);
  Dump(OutPath(f, "verdicts.jsonl"), SerializeVerdicts(verdicts));
  Dump(OutPath(f, "categories.json"), CategoryCountsJson(categories.counts) + "\n");
  Dump(OutPath(f, "candidates.jsonl"),
       SerializePairs(GenerateCandidates(eval, config.topic_key, syn)));
  std::size_t n = ExportRequests(verdicts, eval, config.context,
                                 OutPath(f, "requests.jsonl"));
  std::cout << "threshold " << config.heuristic.threshold << ", "
            << verdicts.size() << " pairs, " << n << " positives\n";
  return 0;
}

int CmdExportTrain(const Flags &f) {
  TrainExportSummary s = ExportTrainingPairs(ToConfig(f, "train"));
  std::cout << "threshold " << s.threshold << ": " << s.positives
            << " positive and " << s.negatives << " negative pairs\n";
  return 0;
}

int CmdCluster(const Flags &f) {
  Corpus corpus = LoadWith(f, ParseSplitList(f.splits.empty() ? "test" : f.splits));
  std::vector<MentionPair> edges;
  if (!f.scores.empty()) {
    if (f.requests.empty()) {
      throw Error(ErrorCode::kInvalidConfig, "--scores needs --requests");
    }
    std::vector<ScoreRecord> records = ImportScores(f.scores, f.requests);
    edges = Decide(records);
    fs::create_directories(f.out);
    Dump(OutPath(f, "decisions.jsonl"), SerializeDecisions(records));
  } else {
    edges = PositivePairs(ParseVerdicts(Slurp(f.verdicts)));
  }
  ClusterAssignment clusters = ClusterMentions(corpus, edges);
  fs::create_directories(f.out);
  Dump(OutPath(f, "clusters.jsonl"), SerializeClusters(clusters));
  Dump(OutPath(f, "response.conll"), ToConll(corpus, clusters));
  return 0;
}

int CmdEvaluate(const Flags &f) {
  Partition key, response;
  if (!f.key.empty() || !f.response.empty()) {
    key = ToPartition(ParseConll(Slurp(f.key)));
    response = ToPartition(ParseConll(Slurp(f.response)));
  } else {
    Corpus corpus =
        LoadWith(f, ParseSplitList(f.splits.empty() ? "test" : f.splits));
    key = GoldPartition(corpus);
    response = ToPartition(ParseClusters(Slurp(f.clusters)));
  }
  Dump(f.out, SerializeReport(Evaluate(key, response)));
  return 0;
}

int CmdAnalyze(const Flags &f) {
  Corpus corpus = LoadWith(f, ParseSplitList(f.splits.empty() ? "test" : f.splits));
  std::vector<PairVerdict> verdicts = ParseVerdicts(Slurp(f.verdicts));
  ClusterAssignment clusters = ParseClusters(Slurp(f.clusters));
  std::optional<std::vector<ScoreRecord>> records;
  if (!f.scores.empty()) records = ImportScores(f.scores, f.requests);
  Categorization categories = CategorizePairs(verdicts, corpus.gold());
  fs::create_directories(f.out);
  Dump(OutPath(f, "distributions.csv"),
       DistributionCsv(BuildDistributionReport(verdicts, categories, corpus)));
  Dump(OutPath(f, "purity.csv"), PurityCsv(PurityRanking(clusters, corpus.gold())));
  Dump(OutPath(f, "errors.jsonl"),
       SerializeErrors(ErrorPairs(clusters, corpus, verdicts,
                                  records ? &*records : nullptr),
                       corpus, clusters));
  return 0;
}

int CmdRun(const Flags &f) {
  RunSummary s = RunPipeline(ToConfig(f, "test"));
  std::cout << "threshold " << s.threshold << ", " << s.pairs << " pairs, "
            << s.positives << " heuristic positives\n";
  std::cout << "LH CoNLL F1 " << s.heuristic_report.conll_f1 * 100.0 << "\n";
  if (s.discriminator_report) {
    std::cout << "LH+D CoNLL F1 " << s.discriminator_report->conll_f1 * 100.0
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Lemma-heuristic event coreference pipeline"};
  app.require_subcommand(1);
  Flags f;

  auto *stats = app.add_subcommand("stats", "Corpus statistics per split");
  AddCorpus(stats, f);
  stats->add_option("--out", f.out, "Output JSON file (default stdout)");

  auto *syn = app.add_subcommand("syn-pairs", "Harvest synonymous lemma pairs");
  AddCorpus(syn, f);
  syn->add_option("--syn", f.syn, "train or oracle")
      ->check(CLI::IsMember({"train", "oracle"}));
  syn->add_option("--topic-key", f.topic_key)->check(CLI::IsMember({"topic", "subtopic"}));
  syn->add_option("--min-count", f.min_count)->check(CLI::PositiveNumber);
  syn->add_option("--out", f.out, "Output TSV file (default stdout)");

  auto *tune = app.add_subcommand("tune", "Tune the overlap threshold on dev");
  AddCorpus(tune, f);
  AddHeuristic(tune, f);
  tune->add_option("--out", f.out, "Output JSON file (default stdout)");

  auto *filter = app.add_subcommand("filter", "Heuristic verdicts and requests");
  AddCorpus(filter, f);
  AddHeuristic(filter, f);
  filter->add_option("--splits", f.splits, "Comma-separated splits (default test)");
  filter->add_option("--context", f.context)->check(CLI::IsMember({"sentence", "document"}));
  filter->add_option("--out", f.out, "Output directory")->required();

  auto *train = app.add_subcommand("export-train", "Balanced training pairs");
  AddCorpus(train, f);
  AddHeuristic(train, f);
  train->add_option("--context", f.context)->check(CLI::IsMember({"sentence", "document"}));
  train->add_option("--out", f.out, "Output directory")->required();

  auto *cluster = app.add_subcommand("cluster", "Connected components");
  AddCorpus(cluster, f);
  cluster->add_option("--splits", f.splits);
  cluster->add_option("--verdicts", f.verdicts, "Verdict file (A_H edges)");
  cluster->add_option("--requests", f.requests, "Request file");
  cluster->add_option("--scores", f.scores, "Score file (A_P edges)");
  cluster->add_option("--out", f.out, "Output directory")->required();

  auto *evaluate = app.add_subcommand("evaluate", "Coreference metrics");
  evaluate->add_option("--corpus", f.corpus, "Mention corpus (gold key)");
  evaluate->add_option("--documents", f.documents);
  evaluate->add_option("--splits", f.splits);
  evaluate->add_option("--clusters", f.clusters, "Cluster file (response)");
  evaluate->add_option("--key", f.key, "CoNLL key file");
  evaluate->add_option("--response", f.response, "CoNLL response file");
  evaluate->add_option("--out", f.out, "Output JSON file (default stdout)");

  auto *analyze = app.add_subcommand("analyze", "Diagnostic reports");
  AddCorpus(analyze, f);
  analyze->add_option("--splits", f.splits);
  analyze->add_option("--verdicts", f.verdicts)->required();
  analyze->add_option("--clusters", f.clusters)->required();
  analyze->add_option("--requests", f.requests);
  analyze->add_option("--scores", f.scores);
  analyze->add_option("--out", f.out, "Output directory")->required();

  auto *run = app.add_subcommand("run", "End-to-end pipeline");
  AddCorpus(run, f);
  AddHeuristic(run, f);
  run->add_option("--splits", f.splits, "Comma-separated splits (default test)");
  run->add_option("--context", f.context)->check(CLI::IsMember({"sentence", "document"}));
  run->add_option("--scorer", f.scorer, "Scorer command");
  run->add_option("--seed", f.seed, "Reserved; the pipeline is deterministic");
  run->add_option("--out", f.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*stats) return CmdStats(f);
    if (*syn) return CmdSynPairs(f);
    if (*tune) return CmdTune(f);
    if (*filter) return CmdFilter(f);
    if (*train) return CmdExportTrain(f);
    if (*cluster) {
      if (f.verdicts.empty() && f.scores.empty()) {
        std::cerr << "cluster: pass --verdicts or --scores/--requests\n";
        return kExitUsage;
      }
      return CmdCluster(f);
    }
    if (*evaluate) {
      if (f.clusters.empty() && (f.key.empty() || f.response.empty())) {
        std::cerr << "evaluate: pass --corpus/--clusters or --key/--response\n";
        return kExitUsage;
      }
      return CmdEvaluate(f);
    }
    if (*analyze) return CmdAnalyze(f);
    if (*run) return CmdRun(f);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kInvalidConfig: return kExitUsage;
      case ErrorCode::kScorerFailure: return kExitScorer;
      default: return kExitData;
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
