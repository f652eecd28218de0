#ifndef LEMMACOREF_SYN_PAIRS_H_
#define LEMMACOREF_SYN_PAIRS_H_

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lemmacoref/corpus.h"
#include "lemmacoref/pairs.h"

namespace lemmacoref {

// Unordered pairs of differing lemmas harvested from gold coreference chains,
// with the number of coreferent mention pairs that produced each.
class SynPairSet {
 public:
  using LemmaPair = std::pair<std::string, std::string>;

  SynPairSet() = default;
  explicit SynPairSet(std::size_t min_count) : min_count_(min_count) {}

  // Adds count to the unordered pair. Equal lemmas are ignored.
  void add(std::string_view x, std::string_view y, std::size_t count = 1);
  bool contains(std::string_view x, std::string_view y) const;

  // Lemmas paired with `lemma`, sorted.
  const std::vector<std::string> &partners(std::string_view lemma) const;

  const std::map<LemmaPair, std::size_t> &entries() const { return counts_; }
  std::size_t size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }
  std::size_t min_count() const { return min_count_; }

  // Drops pairs whose count is below min_count.
  SynPairSet pruned(std::size_t min_count) const;

  bool operator==(const SynPairSet &other) const {
    return counts_ == other.counts_;
  }

 private:
  std::size_t min_count_ = 1;
  std::map<LemmaPair, std::size_t> counts_;
  std::map<std::string, std::vector<std::string>, std::less<>> partners_;
};

// Counts, for every gold-coreferent mention pair inside one group whose head
// lemmas differ, the unordered lemma pair; keeps pairs seen >= min_count
// times. Throws Error(kEmptySplitSelection) or Error(kInvalidConfig).
SynPairSet ExtractSynPairs(const Corpus &corpus, const std::set<Split> &splits,
                           TopicKey key, std::size_t min_count = 1);

// TSV: lemma_a<TAB>lemma_b<TAB>count, lemmas in lexicographic order.
std::string SerializeSynPairs(const SynPairSet &syn);
SynPairSet ParseSynPairs(std::string_view tsv, std::size_t min_count = 1);
SynPairSet LoadSynPairs(const std::string &path, std::size_t min_count = 1);

}  // namespace lemmacoref

#endif  // LEMMACOREF_SYN_PAIRS_H_
