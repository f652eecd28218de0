#ifndef LEMMACOREF_SCORER_BRIDGE_H_
#define LEMMACOREF_SCORER_BRIDGE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lemmacoref/corpus.h"
#include "lemmacoref/heuristic.h"
#include "lemmacoref/pairs.h"

namespace lemmacoref {

// File exchange with an external pairwise scorer. For every heuristic
// positive a request carries both concatenation orders; the scorer answers
// with CE(A,B) and CE(B,A) and the bridge averages them.

inline constexpr std::string_view kMentionStart = "<m>";
inline constexpr std::string_view kMentionEnd = "</m>";
// Joins the two mention segments of one ordered context.
inline constexpr std::string_view kSegmentSeparator = "\n";
// Pairs whose symmetric score is strictly above this are coreferent.
inline constexpr double kDecisionThreshold = 0.5;

enum class ContextMode { kSentence, kDocument };

ContextMode ParseContextMode(std::string_view name);

struct MarkedContext {
  std::string text;
  // Byte offsets [begin, end) of the first and second trigger inside text,
  // excluding the markers.
  std::vector<std::pair<std::size_t, std::size_t>> trigger_spans;

  bool operator==(const MarkedContext &other) const = default;
};

struct ScoringRequest {
  std::size_t pair_id = 0;
  MentionPair pair;
  MarkedContext context_ab;
  MarkedContext context_ba;

  bool operator==(const ScoringRequest &other) const = default;
};

// One mention's context: its sentence (or whole document) as space-joined
// lemma tokens, with the head token replaced by "<m> trigger_text </m>".
// The head token is the first sentence token equal to the head lemma; in
// document mode the sentence is located as the first matching token run.
// When no head token is found the marked trigger is prepended. Throws
// Error(kMissingDocumentText) in document mode without the document.
MarkedContext MentionContext(const Mention &mention, const Corpus &corpus,
                             ContextMode mode);

// Concatenates two mention contexts in the given order.
MarkedContext PairContext(const MarkedContext &first,
                          const MarkedContext &second);

// Requests for the positive verdicts only, numbered from 0 in verdict order.
std::vector<ScoringRequest> BuildRequests(
    const std::vector<PairVerdict> &verdicts, const Corpus &corpus,
    ContextMode mode);

// JSON Lines {pair_id, a, b, context_ab: {text, trigger_spans}, context_ba}.
std::string SerializeRequests(const std::vector<ScoringRequest> &requests);
std::vector<ScoringRequest> ParseRequests(std::string_view jsonl);

// Writes the request file; returns the number of lines written.
std::size_t ExportRequests(const std::vector<PairVerdict> &verdicts,
                           const Corpus &corpus, ContextMode mode,
                           const std::string &path);

struct ScoreRecord {
  MentionPair pair;
  double score_ab = 0.0;
  double score_ba = 0.0;
  double symmetric = 0.0;
};

// Averages the two ordered scores.
double SymmetricScore(double score_ab, double score_ba);

// Parses score lines {pair_id, score_ab, score_ba} and checks they cover the
// requests exactly. Throws Error(kMissingPair), Error(kDuplicatePair),
// Error(kScoreOutOfRange) or Error(kMalformedRecord). Records follow request
// order.
std::vector<ScoreRecord> ParseScores(std::string_view jsonl,
                                     const std::vector<ScoringRequest> &requests);
std::vector<ScoreRecord> ImportScores(const std::string &scores_path,
                                      const std::string &requests_path);

// Edges of A_P: pairs with symmetric score > 0.5, sorted.
std::vector<MentionPair> Decide(const std::vector<ScoreRecord> &records);

// JSON Lines {a, b, score_ab, score_ba, symmetric, coreferent}.
std::string SerializeDecisions(const std::vector<ScoreRecord> &records);

}  // namespace lemmacoref

#endif  // LEMMACOREF_SCORER_BRIDGE_H_
