#ifndef LEMMACOREF_ASSIGNMENT_H_
#define LEMMACOREF_ASSIGNMENT_H_

#include <cstddef>
#include <vector>

namespace lemmacoref {

// Dense rows x cols weight matrix, row-major.
struct WeightMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> weights;

  double operator()(std::size_t r, std::size_t c) const {
    return weights[r * cols + c];
  }
};

struct AssignmentResult {
  double total = 0.0;
  // row -> assigned column, or -1 when the row is unmatched.
  std::vector<long> row_to_col;
};

// Maximum-weight one-to-one matching of rows to columns (Kuhn-Munkres with
// potentials). Weights must be non-negative; every row of the smaller side is
// matched.
AssignmentResult MaxWeightAssignment(const WeightMatrix &matrix);

}  // namespace lemmacoref

#endif  // LEMMACOREF_ASSIGNMENT_H_
