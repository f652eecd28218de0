// Stand-in pairwise scorer for pipeline tests: answers every request with
// fixed scores.
//
//   constant_scorer SCORE [SCORE_BA] REQUESTS.jsonl SCORES.jsonl

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "json.hpp"

int main(int argc, char **argv) {
  if (argc != 4 && argc != 5) {
    std::cerr << "usage: constant_scorer SCORE [SCORE_BA] REQUESTS SCORES\n";
    return 1;
  }
  const double score_ab = std::atof(argv[1]);
  const double score_ba = argc == 5 ? std::atof(argv[2]) : score_ab;
  std::ifstream in(argv[argc - 2]);
  std::ofstream out(argv[argc - 1], std::ios::trunc);
  if (!in || !out) {
    std::cerr << "constant_scorer: cannot open files\n";
    return 1;
  }
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    auto request = nlohmann::json::parse(line);
    nlohmann::ordered_json score = {{"pair_id", request.at("pair_id")},
                                    {"score_ab", score_ab},
                                    {"score_ba", score_ba}};
    out << score.dump() << '\n';
  }
  return 0;
}
