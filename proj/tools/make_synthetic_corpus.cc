// Writes a seeded event-style corpus and its document sidecar.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "lemmacoref/corpus.h"
#include "lemmacoref/error.h"
#include "testing/synthetic.h"

int main(int argc, char **argv) {
  CLI::App app{"Generate a synthetic mention corpus"};
  std::uint64_t seed = 7;
  lemmacoref::testing::EventCorpusOptions opt;
  std::string corpus_path;
  std::string documents_path;
  app.add_option("--seed", seed);
  app.add_option("--topics", opt.topics)->check(CLI::PositiveNumber);
  app.add_option("--events-per-topic", opt.events_per_topic)->check(CLI::PositiveNumber);
  app.add_option("--docs-per-topic", opt.docs_per_topic)->check(CLI::PositiveNumber);
  app.add_option("--corpus", corpus_path)->required();
  app.add_option("--documents", documents_path);
  CLI11_PARSE(app, argc, argv);

  try {
    auto generated = lemmacoref::testing::MakeEventCorpus(opt, seed);
    lemmacoref::WriteCorpus(generated.corpus, corpus_path);
    if (!documents_path.empty()) {
      std::ofstream out(documents_path, std::ios::binary);
      out << lemmacoref::SerializeDocuments(generated.documents);
      if (!out) throw lemmacoref::Error(lemmacoref::ErrorCode::kIo,
                                        "cannot write " + documents_path);
    }
    std::cout << generated.corpus.size() << " mentions\n";
  } catch (const lemmacoref::Error &e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
