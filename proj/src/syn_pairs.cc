#include "lemmacoref/syn_pairs.h"

#include <algorithm>
#include <charconv>

#include "io.h"
#include "lemmacoref/error.h"

namespace lemmacoref {

void SynPairSet::add(std::string_view x, std::string_view y,
                     std::size_t count) {
  if (x == y || count == 0) return;
  if (y < x) std::swap(x, y);
  auto [it, inserted] =
      counts_.try_emplace(LemmaPair(std::string(x), std::string(y)), 0);
  it->second += count;
  if (!inserted) return;
  auto link = [this](std::string_view from, std::string_view to) {
    auto &list = partners_[std::string(from)];
    list.insert(std::lower_bound(list.begin(), list.end(), to), std::string(to));
  };
  link(x, y);
  link(y, x);
}

bool SynPairSet::contains(std::string_view x, std::string_view y) const {
  if (x == y) return false;
  if (y < x) std::swap(x, y);
  return counts_.count(LemmaPair(std::string(x), std::string(y))) > 0;
}

const std::vector<std::string> &SynPairSet::partners(
    std::string_view lemma) const {
  static const std::vector<std::string> kNone;
  auto it = partners_.find(lemma);
  return it == partners_.end() ? kNone : it->second;
}

SynPairSet SynPairSet::pruned(std::size_t min_count) const {
  SynPairSet out(min_count);
  for (const auto &[pair, count] : counts_) {
    if (count >= min_count) out.add(pair.first, pair.second, count);
  }
  return out;
}

SynPairSet ExtractSynPairs(const Corpus &corpus, const std::set<Split> &splits,
                           TopicKey key, std::size_t min_count) {
  if (splits.empty()) {
    throw Error(ErrorCode::kEmptySplitSelection, "no splits selected");
  }
  if (min_count < 1) {
    throw Error(ErrorCode::kInvalidConfig, "min_count must be >= 1");
  }
  Corpus selected = corpus.filter(splits);
  std::vector<std::string> groups = GroupKeys(selected, key);

  // (group, gold cluster) -> head lemma multiplicities. Every cross-lemma
  // mention pair inside a chain contributes one count.
  std::map<std::pair<std::string, std::string>,
           std::map<std::string, std::size_t>>
      chains;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    ++chains[{groups[i], selected.gold_cluster(i)}]
            [selected.mentions()[i].head_lemma];
  }
  SynPairSet all;
  for (const auto &[chain, lemmas] : chains) {
    for (auto x = lemmas.begin(); x != lemmas.end(); ++x) {
      for (auto y = std::next(x); y != lemmas.end(); ++y) {
        all.add(x->first, y->first, x->second * y->second);
      }
    }
  }
  return all.pruned(min_count);
}

std::string SerializeSynPairs(const SynPairSet &syn) {
  std::string out;
  for (const auto &[pair, count] : syn.entries()) {
    out += pair.first;
    out += '\t';
    out += pair.second;
    out += '\t';
    out += std::to_string(count);
    out += '\n';
  }
  return out;
}

SynPairSet ParseSynPairs(std::string_view tsv, std::size_t min_count) {
  SynPairSet all;
  auto lines = internal::SplitLines(tsv);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    std::string_view line = lines[n];
    if (internal::IsBlank(line)) continue;
    auto bad = [&](const std::string &what) {
      return Error(ErrorCode::kMalformedRecord,
                   "syn-pair line " + std::to_string(n + 1) + ": " + what);
    };
    std::size_t t1 = line.find('\t');
    std::size_t t2 =
        t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos) throw bad("expected three columns");
    std::string_view x = line.substr(0, t1);
    std::string_view y = line.substr(t1 + 1, t2 - t1 - 1);
    std::string_view count_text = line.substr(t2 + 1);
    std::size_t count = 0;
    auto [end, ec] = std::from_chars(
        count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc() || end != count_text.data() + count_text.size() ||
        count == 0) {
      throw bad("bad count");
    }
    if (x.empty() || y.empty() || x == y) throw bad("bad lemma pair");
    all.add(x, y, count);
  }
  return all.pruned(min_count);
}

SynPairSet LoadSynPairs(const std::string &path, std::size_t min_count) {
  return ParseSynPairs(internal::ReadFile(path), min_count);
}

}  // namespace lemmacoref
