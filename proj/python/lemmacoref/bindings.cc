#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lemmacoref/clustering.h"
#include "lemmacoref/corpus.h"
#include "lemmacoref/error.h"
#include "lemmacoref/heuristic.h"
#include "lemmacoref/metrics.h"
#include "lemmacoref/pairs.h"
#include "lemmacoref/pipeline.h"
#include "lemmacoref/scorer_bridge.h"
#include "lemmacoref/syn_pairs.h"

namespace py = pybind11;
using namespace lemmacoref;

namespace {

using PairTuple = std::pair<std::string, std::string>;

std::vector<PairTuple> ToTuples(const std::vector<MentionPair> &pairs) {
  std::vector<PairTuple> out;
  out.reserve(pairs.size());
  for (const auto &p : pairs) out.emplace_back(p.a, p.b);
  return out;
}

std::vector<MentionPair> FromTuples(const std::vector<PairTuple> &pairs) {
  std::vector<MentionPair> out;
  out.reserve(pairs.size());
  for (const auto &[a, b] : pairs) out.push_back(MakePair(a, b));
  return out;
}

std::set<Split> Splits(const std::vector<std::string> &names) {
  std::set<Split> out;
  for (const auto &n : names) out.insert(ParseSplit(n));
  return out;
}

HeuristicConfig MakeConfig(double threshold, const std::string &overlap,
                           const std::optional<std::set<std::string>> &stop_lemmas,
                           bool exclude_same_sentence) {
  HeuristicConfig cfg;
  cfg.threshold = threshold;
  cfg.overlap = ParseOverlapMeasure(overlap);
  cfg.stop_lemmas = stop_lemmas ? *stop_lemmas : DefaultStopLemmas();
  cfg.exclude_same_sentence = exclude_same_sentence;
  cfg.Validate();
  return cfg;
}

py::dict ScoreDict(const Score &s) {
  py::dict d;
  d["recall"] = s.recall;
  d["precision"] = s.precision;
  d["f1"] = s.f1;
  return d;
}

py::dict ReportDict(const MetricReport &r) {
  py::dict d;
  d["muc"] = ScoreDict(r.muc);
  d["b_cubed"] = ScoreDict(r.b_cubed);
  d["ceaf_e"] = ScoreDict(r.ceaf_e);
  d["lea"] = ScoreDict(r.lea);
  d["conll_f1"] = r.conll_f1;
  return d;
}

py::dict CountsDict(const CategoryCounts &c) {
  py::dict d;
  d["p_easy"] = c.easy;
  d["p_hard"] = c.hard;
  d["p_fn"] = c.false_negative;
  d["p_tn"] = c.true_negative;
  d["p_recovered"] = c.recovered;
  return d;
}

py::dict VerdictDict(const PairVerdict &v) {
  py::dict d;
  d["a"] = v.pair.a;
  d["b"] = v.pair.b;
  d["positive"] = v.positive;
  d["overlap"] = v.overlap;
  d["rule"] = std::string(MatchRuleName(v.rule));
  return d;
}

PairVerdict VerdictFrom(const py::dict &d) {
  PairVerdict v;
  v.pair = MakePair(d["a"].cast<std::string>(), d["b"].cast<std::string>());
  v.positive = d["positive"].cast<bool>();
  if (d.contains("overlap")) v.overlap = d["overlap"].cast<double>();
  if (d.contains("rule")) v.rule = ParseMatchRule(d["rule"].cast<std::string>());
  return v;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lemma-heuristic event coreference core";

  static py::exception<Error> error(m, "LemmacorefError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error &e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<Corpus>(m, "Corpus")
      .def("__len__", &Corpus::size)
      .def_property_readonly("mention_ids",
                             [](const Corpus &c) {
                               std::vector<std::string> ids;
                               for (const auto &x : c.mentions()) ids.push_back(x.mention_id);
                               return ids;
                             })
      .def_property_readonly("gold", &Corpus::gold)
      .def("mention",
           [](const Corpus &c, const std::string &id) {
             const Mention &x = c.at(id);
             py::dict d;
             d["mention_id"] = x.mention_id;
             d["doc_id"] = x.doc_id;
             d["topic_id"] = x.topic_id;
             d["subtopic_id"] = x.subtopic_id;
             d["sentence_id"] = x.sentence_id;
             d["trigger_text"] = x.trigger_text;
             d["head_lemma"] = x.head_lemma;
             d["sentence_lemmas"] = x.sentence_lemmas;
             d["split"] = std::string(SplitName(x.split));
             return d;
           })
      .def("filter", [](const Corpus &c, const std::vector<std::string> &splits) {
        return c.filter(Splits(splits));
      })
      .def("stats", [](const Corpus &c) {
        py::dict out;
        for (const auto &[split, s] : Stats(c)) {
          py::dict d;
          d["documents"] = s.documents;
          d["mentions"] = s.mentions;
          d["clusters"] = s.clusters;
          d["singletons"] = s.singletons;
          d["topics"] = s.topics;
          d["subtopics"] = s.subtopics;
          out[py::str(std::string(SplitName(split)))] = d;
        }
        return out;
      });

  m.def(
      "load_corpus",
      [](const std::string &path, std::optional<std::vector<std::string>> splits,
         std::optional<std::string> documents) {
        std::optional<std::set<Split>> filter;
        if (splits) filter = Splits(*splits);
        return LoadCorpus(path, filter, documents);
      },
      py::arg("path"), py::arg("splits") = py::none(), py::arg("documents") = py::none());

  py::class_<SynPairSet>(m, "SynPairSet")
      .def(py::init<>())
      .def("add", [](SynPairSet &s, const std::string &x, const std::string &y,
                     std::size_t count) { s.add(x, y, count); },
           py::arg("x"), py::arg("y"), py::arg("count") = 1)
      .def("contains", [](const SynPairSet &s, const std::string &x, const std::string &y) {
        return s.contains(x, y);
      })
      .def("__len__", &SynPairSet::size)
      .def("entries", &SynPairSet::entries)
      .def("to_tsv", &SerializeSynPairs);

  m.def(
      "extract_syn_pairs",
      [](const Corpus &c, const std::vector<std::string> &splits, const std::string &key,
         std::size_t min_count) {
        return ExtractSynPairs(c, Splits(splits), ParseTopicKey(key), min_count);
      },
      py::arg("corpus"), py::arg("splits") = std::vector<std::string>{"train"},
      py::arg("key") = "topic", py::arg("min_count") = 1);

  m.def(
      "all_pairs",
      [](const Corpus &c, const std::string &key) { return ToTuples(AllPairs(c, ParseTopicKey(key))); },
      py::arg("corpus"), py::arg("key") = "topic");

  m.def(
      "generate_candidates",
      [](const Corpus &c, const SynPairSet &syn, const std::string &key) {
        return ToTuples(GenerateCandidates(c, ParseTopicKey(key), syn));
      },
      py::arg("corpus"), py::arg("syn"), py::arg("key") = "topic");

  m.def(
      "trigger_match",
      [](const Corpus &c, const std::string &a, const std::string &b, const SynPairSet &syn) {
        return std::string(MatchRuleName(TriggerMatch(c.at(a), c.at(b), syn)));
      },
      py::arg("corpus"), py::arg("a"), py::arg("b"), py::arg("syn"));

  m.def(
      "sentence_overlap",
      [](const Corpus &c, const std::string &a, const std::string &b, const std::string &overlap,
         std::optional<std::set<std::string>> stop_lemmas) {
        return SentenceOverlap(c.at(a), c.at(b), MakeConfig(0.0, overlap, stop_lemmas, false));
      },
      py::arg("corpus"), py::arg("a"), py::arg("b"), py::arg("overlap") = "jaccard",
      py::arg("stop_lemmas") = py::none());

  m.def("default_stop_lemmas", &DefaultStopLemmas);

  m.def(
      "classify_pairs",
      [](const std::vector<PairTuple> &pairs, const Corpus &c, const SynPairSet &syn,
         double threshold, const std::string &overlap,
         std::optional<std::set<std::string>> stop_lemmas, bool exclude_same_sentence) {
        auto verdicts = ClassifyPairs(FromTuples(pairs), c, syn,
                                      MakeConfig(threshold, overlap, stop_lemmas,
                                                 exclude_same_sentence));
        py::list out;
        for (const auto &v : verdicts) out.append(VerdictDict(v));
        return out;
      },
      py::arg("pairs"), py::arg("corpus"), py::arg("syn"), py::arg("threshold") = 0.0,
      py::arg("overlap") = "jaccard", py::arg("stop_lemmas") = py::none(),
      py::arg("exclude_same_sentence") = false);

  m.def(
      "categorize_pairs",
      [](const py::list &verdicts, const GoldClusterMap &gold) {
        std::vector<PairVerdict> vs;
        for (const auto &item : verdicts) vs.push_back(VerdictFrom(item.cast<py::dict>()));
        auto cat = CategorizePairs(vs, gold);
        std::vector<std::string> names;
        for (auto c : cat.categories) names.emplace_back(PairCategoryName(c));
        py::dict out;
        out["counts"] = CountsDict(cat.counts);
        out["categories"] = names;
        return out;
      },
      py::arg("verdicts"), py::arg("gold"));

  m.def(
      "evaluate",
      [](const Partition &key, const Partition &response) {
        return ReportDict(Evaluate(key, response));
      },
      py::arg("key"), py::arg("response"));

  m.def(
      "connected_components",
      [](const std::vector<std::string> &nodes, const std::vector<PairTuple> &edges) {
        return ConnectedComponents({nodes, FromTuples(edges)});
      },
      py::arg("nodes"), py::arg("edges"));

  m.def("symmetric_score", &SymmetricScore, py::arg("score_ab"), py::arg("score_ba"));

  m.def(
      "decide",
      [](const std::vector<std::tuple<std::string, std::string, double, double>> &scores) {
        std::vector<ScoreRecord> records;
        for (const auto &[a, b, ab, ba] : scores) {
          if (!(ab >= 0.0 && ab <= 1.0 && ba >= 0.0 && ba <= 1.0)) {
            throw Error(ErrorCode::kScoreOutOfRange, a + " " + b);
          }
          records.push_back({MakePair(a, b), ab, ba, SymmetricScore(ab, ba)});
        }
        return ToTuples(Decide(records));
      },
      py::arg("scores"));

  m.def(
      "run_pipeline",
      [](const std::string &corpus, const std::string &out, std::optional<std::string> documents,
         const std::vector<std::string> &splits, const std::string &key, const std::string &syn,
         std::optional<double> threshold, const std::string &overlap,
         std::optional<std::set<std::string>> stop_lemmas, bool exclude_same_sentence,
         const std::string &context, std::optional<std::string> scorer) {
        RunConfig cfg;
        cfg.corpus_path = corpus;
        cfg.out_dir = out;
        cfg.documents_path = documents;
        cfg.splits = Splits(splits);
        cfg.topic_key = ParseTopicKey(key);
        cfg.syn_source = syn;
        cfg.threshold = threshold;
        cfg.heuristic = MakeConfig(0.0, overlap, stop_lemmas, exclude_same_sentence);
        cfg.context = ParseContextMode(context);
        cfg.scorer_command = scorer;
        RunSummary s;
        {
          py::gil_scoped_release release;
          s = RunPipeline(cfg);
        }
        py::dict d;
        d["threshold"] = s.threshold;
        d["pairs"] = s.pairs;
        d["positives"] = s.positives;
        d["categories"] = CountsDict(s.categories);
        d["heuristic_report"] = ReportDict(s.heuristic_report);
        d["discriminator_report"] =
            s.discriminator_report ? py::object(ReportDict(*s.discriminator_report)) : py::none();
        d["artifacts"] = s.artifacts;
        return d;
      },
      py::arg("corpus"), py::arg("out"), py::arg("documents") = py::none(),
      py::arg("splits") = std::vector<std::string>{"test"}, py::arg("key") = "topic",
      py::arg("syn") = "train", py::arg("threshold") = py::none(), py::arg("overlap") = "jaccard",
      py::arg("stop_lemmas") = py::none(), py::arg("exclude_same_sentence") = false,
      py::arg("context") = "sentence", py::arg("scorer") = py::none());
}
