#ifndef LEMMACOREF_PIPELINE_H_
#define LEMMACOREF_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lemmacoref/corpus.h"
#include "lemmacoref/heuristic.h"
#include "lemmacoref/metrics.h"
#include "lemmacoref/pairs.h"
#include "lemmacoref/scorer_bridge.h"
#include "lemmacoref/syn_pairs.h"

namespace lemmacoref {

struct RunConfig {
  std::string corpus_path;
  std::optional<std::string> documents_path;
  // Splits that are filtered, clustered and evaluated.
  std::set<Split> splits = {Split::kTest};
  TopicKey topic_key = TopicKey::kTopic;
  // "train" (LH), "oracle" (LH_Ora: every split) or a syn-pair TSV path.
  std::string syn_source = "train";
  std::size_t min_count = 1;
  // Tuned on the dev split over `grid` when absent.
  std::optional<double> threshold;
  std::vector<double> grid;
  TuneObjective objective = TuneObjective::kConllF1;
  HeuristicConfig heuristic;
  ContextMode context = ContextMode::kSentence;
  // Invoked as `<command> <request file> <score file>` through /bin/sh.
  std::optional<std::string> scorer_command;
  std::string out_dir;
  // The pipeline itself draws no random numbers; kept for synthetic data.
  std::uint64_t seed = 0;
};

// 0.00, 0.01, ..., 0.50.
std::vector<double> DefaultThresholdGrid();

// Resolves the syn-pair source against a loaded corpus.
SynPairSet ResolveSynPairs(const RunConfig &config, const Corpus &corpus);

// The configured threshold, or the dev-tuned one. Throws
// Error(kInvalidConfig) when neither a threshold nor a dev split is present.
TuneResult ResolveThreshold(const RunConfig &config, const Corpus &corpus,
                            const SynPairSet &syn);

// Runs `command request_path score_path`; throws Error(kScorerFailure) on a
// non-zero exit or a missing score file.
void RunScorer(const std::string &command, const std::string &request_path,
               const std::string &score_path);

struct RunSummary {
  double threshold = 0.0;
  std::size_t pairs = 0;
  std::size_t positives = 0;
  CategoryCounts categories;
  MetricReport heuristic_report;
  std::optional<MetricReport> discriminator_report;
  std::vector<std::string> artifacts;
};

// End to end: syn pairs, threshold, heuristic verdicts over every
// within-group pair, A_H clusters with metrics and analysis, scoring
// requests, and, when a scorer is configured, A_P clusters with the same
// reports. Artifacts are written to config.out_dir.
RunSummary RunPipeline(const RunConfig &config);

struct TrainExportSummary {
  double threshold = 0.0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

// Labeled training pairs from the train split: every P+easy pair (label 1)
// and every P-hard pair (label 0), both concatenation orders, no sampling.
// Written to out_dir/train_pairs.jsonl as {a, b, label, category,
// context_ab, context_ba}.
TrainExportSummary ExportTrainingPairs(const RunConfig &config);

}  // namespace lemmacoref

#endif  // LEMMACOREF_PIPELINE_H_
