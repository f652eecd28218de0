#include "lemmacoref/scorer_bridge.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "io.h"
#include "json.hpp"
#include "lemmacoref/error.h"

namespace lemmacoref {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Position of the head token in `tokens`, if any.
std::optional<std::size_t> FindHead(const std::vector<std::string> &tokens,
                                    const Mention &mention, ContextMode mode) {
  const auto &sentence = mention.sentence_lemmas;
  std::size_t offset = 0;
  if (mode == ContextMode::kDocument) {
    auto run = std::search(tokens.begin(), tokens.end(), sentence.begin(),
                           sentence.end());
    if (run == tokens.end()) {
      auto head = std::find(tokens.begin(), tokens.end(), mention.head_lemma);
      if (head == tokens.end()) return std::nullopt;
      return static_cast<std::size_t>(head - tokens.begin());
    }
    offset = static_cast<std::size_t>(run - tokens.begin());
  }
  auto head = std::find(sentence.begin(), sentence.end(), mention.head_lemma);
  if (head == sentence.end()) return std::nullopt;
  return offset + static_cast<std::size_t>(head - sentence.begin());
}

ordered_json ContextJson(const MarkedContext &context) {
  ordered_json spans = ordered_json::array();
  for (auto [begin, end] : context.trigger_spans) {
    spans.push_back({begin, end});
  }
  return ordered_json{{"text", context.text}, {"trigger_spans", spans}};
}

MarkedContext ContextFromJson(const json &value) {
  MarkedContext context;
  context.text = value.at("text").get<std::string>();
  for (const json &span : value.at("trigger_spans")) {
    context.trigger_spans.emplace_back(span.at(0).get<std::size_t>(),
                                       span.at(1).get<std::size_t>());
  }
  return context;
}

}  // namespace

ContextMode ParseContextMode(std::string_view name) {
  if (name == "sentence") return ContextMode::kSentence;
  if (name == "document") return ContextMode::kDocument;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown context mode '" + std::string(name) + "'");
}

MarkedContext MentionContext(const Mention &mention, const Corpus &corpus,
                             ContextMode mode) {
  const std::vector<std::string> *tokens = &mention.sentence_lemmas;
  if (mode == ContextMode::kDocument) {
    auto doc = corpus.documents().find(mention.doc_id);
    if (doc == corpus.documents().end()) {
      throw Error(ErrorCode::kMissingDocumentText,
                  "no document text for '" + mention.doc_id + "'");
    }
    tokens = &doc->second;
  }
  const std::optional<std::size_t> head = FindHead(*tokens, mention, mode);

  MarkedContext context;
  auto append_trigger = [&] {
    context.text += kMentionStart;
    context.text += ' ';
    const std::size_t begin = context.text.size();
    context.text += mention.trigger_text;
    context.trigger_spans.emplace_back(begin, context.text.size());
    context.text += ' ';
    context.text += kMentionEnd;
  };
  if (!head) {
    append_trigger();
    for (const std::string &token : *tokens) {
      context.text += ' ';
      context.text += token;
    }
    return context;
  }
  for (std::size_t i = 0; i < tokens->size(); ++i) {
    if (i > 0) context.text += ' ';
    if (i == *head) {
      append_trigger();
    } else {
      context.text += (*tokens)[i];
    }
  }
  return context;
}

MarkedContext PairContext(const MarkedContext &first,
                          const MarkedContext &second) {
  MarkedContext pair = first;
  pair.text += kSegmentSeparator;
  const std::size_t shift = pair.text.size();
  pair.text += second.text;
  for (auto [begin, end] : second.trigger_spans) {
    pair.trigger_spans.emplace_back(begin + shift, end + shift);
  }
  return pair;
}

std::vector<ScoringRequest> BuildRequests(
    const std::vector<PairVerdict> &verdicts, const Corpus &corpus,
    ContextMode mode) {
  std::map<std::size_t, MarkedContext> contexts;
  auto context_of = [&](const std::string &id) -> const MarkedContext & {
    const std::size_t index = corpus.index_of(id);
    auto it = contexts.find(index);
    if (it == contexts.end()) {
      it = contexts
               .emplace(index,
                        MentionContext(corpus.mentions()[index], corpus, mode))
               .first;
    }
    return it->second;
  };
  std::vector<ScoringRequest> requests;
  for (const PairVerdict &v : verdicts) {
    if (!v.positive) continue;
    ScoringRequest request;
    request.pair_id = requests.size();
    request.pair = v.pair;
    const MarkedContext &a = context_of(v.pair.a);
    const MarkedContext &b = context_of(v.pair.b);
    request.context_ab = PairContext(a, b);
    request.context_ba = PairContext(b, a);
    requests.push_back(std::move(request));
  }
  return requests;
}

std::string SerializeRequests(const std::vector<ScoringRequest> &requests) {
  std::string out;
  for (const ScoringRequest &r : requests) {
    ordered_json record = {{"pair_id", r.pair_id},
                           {"a", r.pair.a},
                           {"b", r.pair.b},
                           {"context_ab", ContextJson(r.context_ab)},
                           {"context_ba", ContextJson(r.context_ba)}};
    out += record.dump();
    out += '\n';
  }
  return out;
}

std::vector<ScoringRequest> ParseRequests(std::string_view jsonl) {
  std::vector<ScoringRequest> requests;
  auto lines = internal::SplitLines(jsonl);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (internal::IsBlank(lines[n])) continue;
    json record = json::parse(lines[n], nullptr, false);
    if (record.is_discarded()) {
      throw Error(ErrorCode::kMalformedRecord,
                  "request line " + std::to_string(n + 1));
    }
    try {
      ScoringRequest r;
      r.pair_id = record.at("pair_id").get<std::size_t>();
      r.pair = MakePair(record.at("a").get<std::string>(),
                        record.at("b").get<std::string>());
      r.context_ab = ContextFromJson(record.at("context_ab"));
      r.context_ba = ContextFromJson(record.at("context_ba"));
      requests.push_back(std::move(r));
    } catch (const json::exception &) {
      throw Error(ErrorCode::kMalformedRecord,
                  "request line " + std::to_string(n + 1));
    }
  }
  return requests;
}

std::size_t ExportRequests(const std::vector<PairVerdict> &verdicts,
                           const Corpus &corpus, ContextMode mode,
                           const std::string &path) {
  std::vector<ScoringRequest> requests = BuildRequests(verdicts, corpus, mode);
  internal::WriteFile(path, SerializeRequests(requests));
  return requests.size();
}

double SymmetricScore(double score_ab, double score_ba) {
  return (score_ab + score_ba) / 2.0;
}

std::vector<ScoreRecord> ParseScores(
    std::string_view jsonl, const std::vector<ScoringRequest> &requests) {
  std::map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    slot.emplace(requests[i].pair_id, i);
  }
  std::vector<ScoreRecord> records(requests.size());
  std::vector<char> filled(requests.size(), 0);

  auto lines = internal::SplitLines(jsonl);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (internal::IsBlank(lines[n])) continue;
    const std::string where = "score line " + std::to_string(n + 1);
    json record = json::parse(lines[n], nullptr, false);
    std::size_t pair_id = 0;
    double ab = 0.0, ba = 0.0;
    if (record.is_discarded()) throw Error(ErrorCode::kMalformedRecord, where);
    try {
      pair_id = record.at("pair_id").get<std::size_t>();
      ab = record.at("score_ab").get<double>();
      ba = record.at("score_ba").get<double>();
    } catch (const json::exception &) {
      throw Error(ErrorCode::kMalformedRecord, where);
    }
    auto it = slot.find(pair_id);
    if (it == slot.end()) {
      throw Error(ErrorCode::kMalformedRecord,
                  where + ": unknown pair_id " + std::to_string(pair_id));
    }
    if (filled[it->second]) {
      throw Error(ErrorCode::kDuplicatePair,
                  where + ": pair_id " + std::to_string(pair_id));
    }
    for (double s : {ab, ba}) {
      if (!(s >= 0.0 && s <= 1.0)) {
        throw Error(ErrorCode::kScoreOutOfRange,
                    where + ": " + internal::FormatDouble(s));
      }
    }
    filled[it->second] = 1;
    ScoreRecord &r = records[it->second];
    r.pair = requests[it->second].pair;
    r.score_ab = ab;
    r.score_ba = ba;
    r.symmetric = SymmetricScore(ab, ba);
  }
  for (std::size_t i = 0; i < requests.size(); ++i) {
    if (!filled[i]) {
      throw Error(ErrorCode::kMissingPair,
                  "no score for pair_id " + std::to_string(requests[i].pair_id));
    }
  }
  return records;
}

std::vector<ScoreRecord> ImportScores(const std::string &scores_path,
                                      const std::string &requests_path) {
  return ParseScores(internal::ReadFile(scores_path),
                     ParseRequests(internal::ReadFile(requests_path)));
}

std::vector<MentionPair> Decide(const std::vector<ScoreRecord> &records) {
  std::vector<MentionPair> edges;
  for (const ScoreRecord &r : records) {
    if (r.symmetric > kDecisionThreshold) edges.push_back(r.pair);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::string SerializeDecisions(const std::vector<ScoreRecord> &records) {
  std::string out;
  for (const ScoreRecord &r : records) {
    ordered_json record = {{"a", r.pair.a},
                           {"b", r.pair.b},
                           {"score_ab", r.score_ab},
                           {"score_ba", r.score_ba},
                           {"symmetric", r.symmetric},
                           {"coreferent", r.symmetric > kDecisionThreshold}};
    out += record.dump();
    out += '\n';
  }
  return out;
}

}  // namespace lemmacoref
