#ifndef LEMMACOREF_CORPUS_H_
#define LEMMACOREF_CORPUS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lemmacoref {

enum class Split { kTrain, kDev, kTest };

std::string_view SplitName(Split split);
// Throws Error(kInvalidConfig) on anything but "train", "dev" or "test".
Split ParseSplit(std::string_view name);
// Parses a comma-separated split list such as "train,dev".
std::set<Split> ParseSplitList(std::string_view list);

// One gold event mention. Lemmas are precomputed upstream and lowercase.
struct Mention {
  std::string mention_id;
  std::string doc_id;
  std::string topic_id;
  std::optional<std::string> subtopic_id;
  int sentence_id = 0;
  std::string trigger_text;
  std::string head_lemma;
  std::vector<std::string> sentence_lemmas;
  Split split = Split::kTrain;

  bool operator==(const Mention &other) const = default;
};

// mention_id -> gold cluster id. Singleton clusters are allowed.
using GoldClusterMap = std::map<std::string, std::string>;

// doc_id -> full-document token lemmas. Only needed for document context.
using DocumentMap = std::map<std::string, std::vector<std::string>>;

// A validated, immutable set of mentions with gold labels.
class Corpus {
 public:
  Corpus() = default;

  // Validates the invariants: unique non-empty ids, non-empty lemmas and
  // trigger, gold covering exactly the mentions, and (when documents are
  // supplied) every referenced doc_id present.
  Corpus(std::vector<Mention> mentions, GoldClusterMap gold,
         DocumentMap documents = {});

  const std::vector<Mention> &mentions() const { return mentions_; }
  const GoldClusterMap &gold() const { return gold_; }
  const DocumentMap &documents() const { return documents_; }
  std::size_t size() const { return mentions_.size(); }

  // Index of a mention, or nullopt.
  std::optional<std::size_t> find(std::string_view mention_id) const;
  // Throws Error(kUnknownMentionId).
  const Mention &at(std::string_view mention_id) const;
  std::size_t index_of(std::string_view mention_id) const;
  const std::string &gold_cluster(std::size_t index) const {
    return gold_cluster_[index];
  }

  // Restriction to the given splits; documents are kept.
  Corpus filter(const std::set<Split> &splits) const;

  bool operator==(const Corpus &other) const {
    return mentions_ == other.mentions_ && gold_ == other.gold_ &&
           documents_ == other.documents_;
  }

 private:
  std::vector<Mention> mentions_;
  GoldClusterMap gold_;
  DocumentMap documents_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> gold_cluster_;
};

// Reads the JSON Lines corpus format. When split_filter is given only those
// splits are kept (validation still covers every line).
Corpus LoadCorpus(const std::string &path,
                  const std::optional<std::set<Split>> &split_filter = {},
                  const std::optional<std::string> &documents_path = {});
Corpus ParseCorpus(std::string_view jsonl,
                   const std::optional<std::set<Split>> &split_filter = {});
DocumentMap ParseDocuments(std::string_view jsonl);
DocumentMap LoadDocuments(const std::string &path);

std::string SerializeCorpus(const Corpus &corpus);
std::string SerializeDocuments(const DocumentMap &documents);
void WriteCorpus(const Corpus &corpus, const std::string &path);

struct SplitStats {
  std::size_t documents = 0;
  std::size_t mentions = 0;
  std::size_t clusters = 0;
  std::size_t singletons = 0;
  std::size_t topics = 0;
  std::size_t subtopics = 0;

  bool operator==(const SplitStats &other) const = default;
};

// Per-split counts. A cluster is counted in a split when at least one of its
// mentions belongs to it; cluster size is measured within the split.
std::map<Split, SplitStats> Stats(const Corpus &corpus);

}  // namespace lemmacoref

#endif  // LEMMACOREF_CORPUS_H_
