#include "lemmacoref/corpus.h"

#include <algorithm>
#include <utility>

#include "io.h"
#include "json.hpp"
#include "lemmacoref/error.h"

namespace lemmacoref {
namespace {

using nlohmann::json;

const std::set<std::string> kMentionKeys = {
    "mention_id", "doc_id",          "topic_id",        "subtopic_id",
    "sentence_id", "trigger_text",   "head_lemma",      "sentence_lemmas",
    "gold_cluster_id", "split"};

bool HasUppercaseAscii(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](char c) { return c >= 'A' && c <= 'Z'; });
}

[[noreturn]] void Malformed(std::size_t line, const std::string &field,
                            const std::string &what) {
  throw Error(ErrorCode::kMalformedRecord, "line " + std::to_string(line) +
                                               ", field '" + field +
                                               "': " + what);
}

std::string GetString(const json &record, std::size_t line,
                      const std::string &field) {
  auto it = record.find(field);
  if (it == record.end()) Malformed(line, field, "missing");
  if (!it->is_string()) Malformed(line, field, "expected string");
  return it->get<std::string>();
}

}  // namespace

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "?";
}

Split ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  if (name == "test") return Split::kTest;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown split '" + std::string(name) + "'");
}

std::set<Split> ParseSplitList(std::string_view list) {
  std::set<Split> splits;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    std::string_view item = list.substr(start, end - start);
    if (!item.empty()) splits.insert(ParseSplit(item));
    start = end + 1;
  }
  return splits;
}

Corpus::Corpus(std::vector<Mention> mentions, GoldClusterMap gold,
               DocumentMap documents)
    : mentions_(std::move(mentions)),
      gold_(std::move(gold)),
      documents_(std::move(documents)) {
  index_.reserve(mentions_.size());
  gold_cluster_.reserve(mentions_.size());
  for (std::size_t i = 0; i < mentions_.size(); ++i) {
    const Mention &m = mentions_[i];
    if (m.mention_id.empty()) {
      throw Error(ErrorCode::kMalformedRecord, "empty mention_id");
    }
    if (m.head_lemma.empty() || m.sentence_lemmas.empty() ||
        m.trigger_text.empty()) {
      throw Error(ErrorCode::kMalformedRecord,
                  "mention '" + m.mention_id +
                      "' needs a trigger, a head lemma and sentence lemmas");
    }
    if (m.sentence_id < 0) {
      throw Error(ErrorCode::kMalformedRecord,
                  "mention '" + m.mention_id + "' has negative sentence_id");
    }
    if (!index_.emplace(m.mention_id, i).second) {
      throw Error(ErrorCode::kDuplicateMentionId, m.mention_id);
    }
    auto g = gold_.find(m.mention_id);
    if (g == gold_.end()) {
      throw Error(ErrorCode::kMissingGoldLabel, m.mention_id);
    }
    gold_cluster_.push_back(g->second);
    if (!documents_.empty() && !documents_.count(m.doc_id)) {
      throw Error(ErrorCode::kDanglingReference,
                  "mention '" + m.mention_id + "' references unknown doc '" +
                      m.doc_id + "'");
    }
  }
  if (gold_.size() != mentions_.size()) {
    for (const auto &[id, cluster] : gold_) {
      if (!index_.count(id)) {
        throw Error(ErrorCode::kDanglingReference,
                    "gold label for unknown mention '" + id + "'");
      }
    }
  }
}

std::optional<std::size_t> Corpus::find(std::string_view mention_id) const {
  auto it = index_.find(std::string(mention_id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Corpus::index_of(std::string_view mention_id) const {
  auto index = find(mention_id);
  if (!index) {
    throw Error(ErrorCode::kUnknownMentionId, std::string(mention_id));
  }
  return *index;
}

const Mention &Corpus::at(std::string_view mention_id) const {
  return mentions_[index_of(mention_id)];
}

Corpus Corpus::filter(const std::set<Split> &splits) const {
  std::vector<Mention> kept;
  GoldClusterMap gold;
  for (std::size_t i = 0; i < mentions_.size(); ++i) {
    if (!splits.count(mentions_[i].split)) continue;
    kept.push_back(mentions_[i]);
    gold.emplace(mentions_[i].mention_id, gold_cluster_[i]);
  }
  return Corpus(std::move(kept), std::move(gold), documents_);
}

Corpus ParseCorpus(std::string_view jsonl,
                   const std::optional<std::set<Split>> &split_filter) {
  std::vector<Mention> mentions;
  GoldClusterMap gold;
  std::set<std::string> seen;
  auto lines = internal::SplitLines(jsonl);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    if (internal::IsBlank(lines[n])) continue;
    json record = json::parse(lines[n], nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      Malformed(line_no, "<record>", "not a JSON object");
    }
    for (const auto &item : record.items()) {
      if (!kMentionKeys.count(item.key())) {
        Malformed(line_no, item.key(), "unexpected key");
      }
    }
    Mention m;
    m.mention_id = GetString(record, line_no, "mention_id");
    m.doc_id = GetString(record, line_no, "doc_id");
    m.topic_id = GetString(record, line_no, "topic_id");
    if (auto it = record.find("subtopic_id");
        it != record.end() && !it->is_null()) {
      if (!it->is_string()) Malformed(line_no, "subtopic_id", "expected string");
      m.subtopic_id = it->get<std::string>();
    }
    auto sid = record.find("sentence_id");
    if (sid == record.end()) Malformed(line_no, "sentence_id", "missing");
    if (!sid->is_number_integer() || sid->get<long long>() < 0) {
      Malformed(line_no, "sentence_id", "expected non-negative integer");
    }
    m.sentence_id = sid->get<int>();
    m.trigger_text = GetString(record, line_no, "trigger_text");
    if (m.trigger_text.empty()) Malformed(line_no, "trigger_text", "empty");
    m.head_lemma = GetString(record, line_no, "head_lemma");
    if (m.head_lemma.empty()) Malformed(line_no, "head_lemma", "empty");
    if (HasUppercaseAscii(m.head_lemma)) {
      Malformed(line_no, "head_lemma", "must be lowercase");
    }
    auto lemmas = record.find("sentence_lemmas");
    if (lemmas == record.end()) Malformed(line_no, "sentence_lemmas", "missing");
    if (!lemmas->is_array() || lemmas->empty()) {
      Malformed(line_no, "sentence_lemmas", "expected non-empty array");
    }
    for (const auto &lemma : *lemmas) {
      if (!lemma.is_string()) {
        Malformed(line_no, "sentence_lemmas", "expected strings");
      }
      if (HasUppercaseAscii(lemma.get_ref<const std::string &>())) {
        Malformed(line_no, "sentence_lemmas", "must be lowercase");
      }
      m.sentence_lemmas.push_back(lemma.get<std::string>());
    }
    m.split = [&] {
      std::string name = GetString(record, line_no, "split");
      try {
        return ParseSplit(name);
      } catch (const Error &) {
        Malformed(line_no, "split", "unknown split '" + name + "'");
      }
    }();
    if (m.mention_id.empty()) Malformed(line_no, "mention_id", "empty");
    if (!seen.insert(m.mention_id).second) {
      throw Error(ErrorCode::kDuplicateMentionId,
                  "line " + std::to_string(line_no) + ": " + m.mention_id);
    }
    auto cluster = record.find("gold_cluster_id");
    if (cluster == record.end() || cluster->is_null()) {
      throw Error(ErrorCode::kMissingGoldLabel,
                  "line " + std::to_string(line_no) + ": " + m.mention_id);
    }
    if (!cluster->is_string()) {
      Malformed(line_no, "gold_cluster_id", "expected string");
    }
    if (split_filter && !split_filter->count(m.split)) continue;
    gold.emplace(m.mention_id, cluster->get<std::string>());
    mentions.push_back(std::move(m));
  }
  return Corpus(std::move(mentions), std::move(gold));
}

DocumentMap ParseDocuments(std::string_view jsonl) {
  DocumentMap documents;
  auto lines = internal::SplitLines(jsonl);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (internal::IsBlank(lines[n])) continue;
    json record = json::parse(lines[n], nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      Malformed(n + 1, "<record>", "not a JSON object");
    }
    std::string doc_id = GetString(record, n + 1, "doc_id");
    auto tokens = record.find("token_lemmas");
    if (tokens == record.end() || !tokens->is_array()) {
      Malformed(n + 1, "token_lemmas", "expected array");
    }
    std::vector<std::string> lemmas;
    for (const auto &t : *tokens) {
      if (!t.is_string()) Malformed(n + 1, "token_lemmas", "expected strings");
      lemmas.push_back(t.get<std::string>());
    }
    if (!documents.emplace(doc_id, std::move(lemmas)).second) {
      Malformed(n + 1, "doc_id", "duplicate document '" + doc_id + "'");
    }
  }
  return documents;
}

DocumentMap LoadDocuments(const std::string &path) {
  return ParseDocuments(internal::ReadFile(path));
}

Corpus LoadCorpus(const std::string &path,
                  const std::optional<std::set<Split>> &split_filter,
                  const std::optional<std::string> &documents_path) {
  Corpus corpus = ParseCorpus(internal::ReadFile(path), split_filter);
  if (!documents_path) return corpus;
  std::vector<Mention> mentions = corpus.mentions();
  GoldClusterMap gold = corpus.gold();
  return Corpus(std::move(mentions), std::move(gold),
                LoadDocuments(*documents_path));
}

std::string SerializeCorpus(const Corpus &corpus) {
  std::string out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Mention &m = corpus.mentions()[i];
    json record = {{"mention_id", m.mention_id},
                   {"doc_id", m.doc_id},
                   {"topic_id", m.topic_id},
                   {"sentence_id", m.sentence_id},
                   {"trigger_text", m.trigger_text},
                   {"head_lemma", m.head_lemma},
                   {"sentence_lemmas", m.sentence_lemmas},
                   {"gold_cluster_id", corpus.gold_cluster(i)},
                   {"split", SplitName(m.split)}};
    if (m.subtopic_id) record["subtopic_id"] = *m.subtopic_id;
    out += record.dump();
    out += '\n';
  }
  return out;
}

std::string SerializeDocuments(const DocumentMap &documents) {
  std::string out;
  for (const auto &[doc_id, lemmas] : documents) {
    out += json{{"doc_id", doc_id}, {"token_lemmas", lemmas}}.dump();
    out += '\n';
  }
  return out;
}

void WriteCorpus(const Corpus &corpus, const std::string &path) {
  internal::WriteFile(path, SerializeCorpus(corpus));
}

std::map<Split, SplitStats> Stats(const Corpus &corpus) {
  struct Acc {
    std::set<std::string> documents, topics, subtopics;
    std::map<std::string, std::size_t> cluster_sizes;
    std::size_t mentions = 0;
  };
  std::map<Split, Acc> acc;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Mention &m = corpus.mentions()[i];
    Acc &a = acc[m.split];
    a.documents.insert(m.doc_id);
    a.topics.insert(m.topic_id);
    if (m.subtopic_id) a.subtopics.insert(*m.subtopic_id);
    ++a.cluster_sizes[corpus.gold_cluster(i)];
    ++a.mentions;
  }
  std::map<Split, SplitStats> stats;
  for (const auto &[split, a] : acc) {
    SplitStats s;
    s.documents = a.documents.size();
    s.mentions = a.mentions;
    s.clusters = a.cluster_sizes.size();
    s.singletons = static_cast<std::size_t>(
        std::count_if(a.cluster_sizes.begin(), a.cluster_sizes.end(),
                      [](const auto &kv) { return kv.second == 1; }));
    s.topics = a.topics.size();
    s.subtopics = a.subtopics.size();
    stats[split] = s;
  }
  return stats;
}

}  // namespace lemmacoref
