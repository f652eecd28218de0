#include "lemmacoref/assignment.h"

#include <limits>

namespace lemmacoref {

AssignmentResult MaxWeightAssignment(const WeightMatrix &matrix) {
  AssignmentResult result;
  result.row_to_col.assign(matrix.rows, -1);
  if (matrix.rows == 0 || matrix.cols == 0) return result;

  // Solve min-cost on the orientation with n <= m, cost = -weight.
  const bool transposed = matrix.rows > matrix.cols;
  const std::size_t n = transposed ? matrix.cols : matrix.rows;
  const std::size_t m = transposed ? matrix.rows : matrix.cols;
  auto cost = [&](std::size_t i, std::size_t j) {
    return transposed ? -matrix(j - 1, i - 1) : -matrix(i - 1, j - 1);
  };

  const double inf = std::numeric_limits<double>::infinity();
  // 1-based arrays; column 0 is the virtual start.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] == 0) continue;
    const std::size_t row = transposed ? j - 1 : p[j] - 1;
    const std::size_t col = transposed ? p[j] - 1 : j - 1;
    result.row_to_col[row] = static_cast<long>(col);
  }
  // Sum in row order so the total does not depend on the solver's path.
  for (std::size_t r = 0; r < matrix.rows; ++r) {
    if (result.row_to_col[r] >= 0) {
      result.total += matrix(r, static_cast<std::size_t>(result.row_to_col[r]));
    }
  }
  return result;
}

}  // namespace lemmacoref
