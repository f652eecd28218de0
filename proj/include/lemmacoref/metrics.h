#ifndef LEMMACOREF_METRICS_H_
#define LEMMACOREF_METRICS_H_

#include <string>
#include <vector>

#include "lemmacoref/clustering.h"
#include "lemmacoref/corpus.h"

namespace lemmacoref {

// Disjoint, non-empty mention sets covering one universe.
using Partition = std::vector<std::vector<std::string>>;

struct Score {
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
};

// Harmonic mean; 0 when both inputs are 0.
double F1(double recall, double precision);

// All metrics throw Error(kUniverseMismatch) when key and response cover
// different mentions, and Error(kInvalidConfig) for malformed partitions.
// Any empty denominator yields 0 for that component.

// Link-based: recall = sum(|k| - |p(k)|) / sum(|k| - 1).
Score Muc(const Partition &key, const Partition &response);

// Mention-based: per-mention overlap of its key and response entities.
Score BCubed(const Partition &key, const Partition &response);

// Entity-based: optimal one-to-one alignment under
// phi4(k, r) = 2|k & r| / (|k| + |r|).
Score CeafE(const Partition &key, const Partition &response);

// Link-based entity-aware score. Entities are weighted by size; a singleton
// entity has one self-link that is resolved only when its mention is also a
// singleton on the other side (reference-scorer convention).
Score Lea(const Partition &key, const Partition &response);

struct MetricReport {
  Score muc;
  Score b_cubed;
  Score ceaf_e;
  Score lea;
  // Mean of the MUC, B3 and CEAF_e F1 values; LEA is not included.
  double conll_f1 = 0.0;
};

MetricReport Evaluate(const Partition &key, const Partition &response);

Partition ToPartition(const ClusterAssignment &assignment);
Partition GoldPartition(const Corpus &corpus);

// JSON object with muc/b_cubed/ceaf_e/lea {recall, precision, f1} and conll_f1.
std::string SerializeReport(const MetricReport &report);

}  // namespace lemmacoref

#endif  // LEMMACOREF_METRICS_H_
