#include "lemmacoref/pipeline.h"

#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>

#include "io.h"
#include "json.hpp"
#include "lemmacoref/analysis.h"
#include "lemmacoref/clustering.h"
#include "lemmacoref/error.h"

namespace lemmacoref {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::string dir) : dir_(std::move(dir)) {
    if (dir_.empty()) throw Error(ErrorCode::kInvalidConfig, "no output directory");
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir_);
  }

  std::string path(const std::string &name) const {
    return (fs::path(dir_) / name).string();
  }

  void write(const std::string &name, std::string_view contents) {
    internal::WriteFile(path(name), contents);
    written_.push_back(name);
  }

  const std::vector<std::string> &written() const { return written_; }

 private:
  std::string dir_;
  std::vector<std::string> written_;
};

ordered_json CountsJson(const CategoryCounts &c) {
  return ordered_json::parse(CategoryCountsJson(c));
}

Corpus LoadFor(const RunConfig &config) {
  return LoadCorpus(config.corpus_path, std::nullopt, config.documents_path);
}

// Clusters, metrics and analysis for one adjacency (A_H or A_P).
MetricReport WriteClusterReports(ArtifactWriter &out, const std::string &tag,
                                 const Corpus &corpus,
                                 const std::vector<MentionPair> &edges,
                                 const std::vector<PairVerdict> &verdicts,
                                 const std::vector<ScoreRecord> *records) {
  const ClusterAssignment clusters = ClusterMentions(corpus, edges);
  const MetricReport report =
      Evaluate(GoldPartition(corpus), ToPartition(clusters));
  out.write("clusters_" + tag + ".jsonl", SerializeClusters(clusters));
  out.write("report_" + tag + ".json", SerializeReport(report));
  out.write("response_" + tag + ".conll", ToConll(corpus, clusters));
  out.write("purity_" + tag + ".csv",
            PurityCsv(PurityRanking(clusters, corpus.gold())));
  out.write("errors_" + tag + ".jsonl",
            SerializeErrors(ErrorPairs(clusters, corpus, verdicts, records),
                            corpus, clusters));
  return report;
}

}  // namespace

std::vector<double> DefaultThresholdGrid() {
  std::vector<double> grid;
  for (int i = 0; i <= 50; ++i) grid.push_back(i / 100.0);
  return grid;
}

SynPairSet ResolveSynPairs(const RunConfig &config, const Corpus &corpus) {
  if (config.syn_source == "train") {
    return ExtractSynPairs(corpus, {Split::kTrain}, config.topic_key,
                           config.min_count);
  }
  if (config.syn_source == "oracle") {
    return ExtractSynPairs(corpus, {Split::kTrain, Split::kDev, Split::kTest},
                           config.topic_key, config.min_count);
  }
  return LoadSynPairs(config.syn_source, config.min_count);
}

TuneResult ResolveThreshold(const RunConfig &config, const Corpus &corpus,
                            const SynPairSet &syn) {
  if (config.threshold) {
    TuneResult fixed;
    fixed.threshold = *config.threshold;
    return fixed;
  }
  Corpus dev = corpus.filter({Split::kDev});
  if (dev.size() == 0) {
    throw Error(ErrorCode::kInvalidConfig,
                "no dev split to tune on; pass a threshold");
  }
  return TuneThreshold(
      dev, syn, config.grid.empty() ? DefaultThresholdGrid() : config.grid,
      config.objective, config.heuristic, config.topic_key);
}

void RunScorer(const std::string &command, const std::string &request_path,
               const std::string &score_path) {
  const std::string script = command + " \"$1\" \"$2\"";
  pid_t pid = fork();
  if (pid < 0) throw Error(ErrorCode::kScorerFailure, "fork failed");
  if (pid == 0) {
    execl("/bin/sh", "sh", "-c", script.c_str(), "sh", request_path.c_str(),
          score_path.c_str(), static_cast<char *>(nullptr));
    _exit(127);
  }
  int status = 0;
  if (waitpid(pid, &status, 0) < 0) {
    throw Error(ErrorCode::kScorerFailure, "waitpid failed");
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw Error(ErrorCode::kScorerFailure,
                "'" + command + "' exited with status " +
                    std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1));
  }
  if (!fs::exists(score_path)) {
    throw Error(ErrorCode::kScorerFailure, "scorer wrote no " + score_path);
  }
}

RunSummary RunPipeline(const RunConfig &config) {
  config.heuristic.Validate();
  const Corpus corpus = LoadFor(config);
  if (config.splits.empty()) {
    throw Error(ErrorCode::kEmptySplitSelection, "no evaluation splits");
  }
  ArtifactWriter out(config.out_dir);

  const SynPairSet syn = ResolveSynPairs(config, corpus);
  out.write("syn_pairs.tsv", SerializeSynPairs(syn));
  const TuneResult tuned = ResolveThreshold(config, corpus, syn);
  if (!tuned.evaluated.empty()) {
    ordered_json grid = ordered_json::array();
    for (auto [t, v] : tuned.evaluated) grid.push_back({{"threshold", t}, {"objective", v}});
    out.write("tune.json", ordered_json{{"threshold", tuned.threshold},
                                        {"objective", tuned.objective},
                                        {"grid", grid}}
                                   .dump(2) +
                               "\n");
  }
  HeuristicConfig heuristic = config.heuristic;
  heuristic.threshold = tuned.threshold;

  const Corpus eval = corpus.filter(config.splits);
  const std::vector<MentionPair> pairs = AllPairs(eval, config.topic_key);
  const std::vector<PairVerdict> verdicts =
      ClassifyPairs(pairs, eval, syn, heuristic);
  out.write("verdicts.jsonl", SerializeVerdicts(verdicts));

  const Categorization categories = CategorizePairs(verdicts, eval.gold());
  const DistributionReport distribution =
      BuildDistributionReport(verdicts, categories, eval);
  ordered_json category_json;
  for (const auto &[split, d] : distribution) {
    category_json[std::string(SplitName(split))] = CountsJson(d.counts);
  }
  category_json["total"] = CountsJson(categories.counts);
  out.write("categories.json", category_json.dump(2) + "\n");
  out.write("distributions.csv", DistributionCsv(distribution));

  RunSummary summary;
  summary.threshold = tuned.threshold;
  summary.pairs = pairs.size();
  summary.categories = categories.counts;

  const std::vector<MentionPair> positives = PositivePairs(verdicts);
  summary.positives = positives.size();
  const ClusterAssignment gold(eval.gold().begin(), eval.gold().end());
  out.write("key.conll", ToConll(eval, gold));
  summary.heuristic_report =
      WriteClusterReports(out, "lh", eval, positives, verdicts, nullptr);

  out.write("requests.jsonl",
            SerializeRequests(BuildRequests(verdicts, eval, config.context)));
  if (config.scorer_command) {
    const std::string scores = out.path("scores.jsonl");
    RunScorer(*config.scorer_command, out.path("requests.jsonl"), scores);
    const std::vector<ScoreRecord> records =
        ImportScores(scores, out.path("requests.jsonl"));
    out.write("decisions.jsonl", SerializeDecisions(records));
    summary.discriminator_report = WriteClusterReports(
        out, "d", eval, Decide(records), verdicts, &records);
  }

  ordered_json splits = ordered_json::array();
  for (Split s : config.splits) splits.push_back(SplitName(s));
  ordered_json run = {
      {"splits", splits},
      {"topic_key", config.topic_key == TopicKey::kTopic ? "topic" : "subtopic"},
      {"syn_source", config.syn_source == "train" || config.syn_source == "oracle"
                         ? config.syn_source
                         : "file"},
      {"syn_pairs", syn.size()},
      {"min_count", config.min_count},
      {"threshold", tuned.threshold},
      {"threshold_tuned", !config.threshold.has_value()},
      {"overlap", config.heuristic.overlap == OverlapMeasure::kJaccard ? "jaccard"
                                                                       : "min"},
      {"stop_lemmas", config.heuristic.stop_lemmas.size()},
      {"exclude_same_sentence", config.heuristic.exclude_same_sentence},
      {"context", config.context == ContextMode::kSentence ? "sentence"
                                                           : "document"},
      {"scorer", config.scorer_command.has_value()},
      {"pairs", summary.pairs},
      {"positives", summary.positives},
      {"conll_f1_lh", summary.heuristic_report.conll_f1}};
  if (summary.discriminator_report) {
    run["conll_f1_d"] = summary.discriminator_report->conll_f1;
  }
  out.write("run.json", run.dump(2) + "\n");
  summary.artifacts = out.written();
  return summary;
}

TrainExportSummary ExportTrainingPairs(const RunConfig &config) {
  config.heuristic.Validate();
  const Corpus corpus = LoadFor(config);
  const Corpus train = corpus.filter({Split::kTrain});
  if (train.size() == 0) {
    throw Error(ErrorCode::kEmptySplitSelection, "corpus has no train split");
  }
  ArtifactWriter out(config.out_dir);
  const SynPairSet syn = ResolveSynPairs(config, corpus);
  const TuneResult tuned = ResolveThreshold(config, corpus, syn);
  HeuristicConfig heuristic = config.heuristic;
  heuristic.threshold = tuned.threshold;

  const std::vector<PairVerdict> verdicts = ClassifyPairs(
      AllPairs(train, config.topic_key), train, syn, heuristic);
  const Categorization categories = CategorizePairs(verdicts, train.gold());
  // Positive verdicts are exactly the easy and hard pairs, so the requests
  // line up with them in order.
  const std::vector<ScoringRequest> requests =
      BuildRequests(verdicts, train, config.context);

  TrainExportSummary summary;
  summary.threshold = tuned.threshold;
  std::string lines;
  std::size_t next = 0;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    if (!verdicts[i].positive) continue;
    const ScoringRequest &request = requests[next++];
    const bool easy = categories.categories[i] == PairCategory::kEasy;
    (easy ? summary.positives : summary.negatives)++;
    auto context = [](const MarkedContext &c) {
      ordered_json spans = ordered_json::array();
      for (auto [b, e] : c.trigger_spans) spans.push_back({b, e});
      return ordered_json{{"text", c.text}, {"trigger_spans", spans}};
    };
    lines += ordered_json{{"a", request.pair.a},
                          {"b", request.pair.b},
                          {"label", easy ? 1 : 0},
                          {"category", PairCategoryName(categories.categories[i])},
                          {"context_ab", context(request.context_ab)},
                          {"context_ba", context(request.context_ba)}}
                 .dump();
    lines += '\n';
  }
  out.write("train_pairs.jsonl", lines);
  return summary;
}

}  // namespace lemmacoref
