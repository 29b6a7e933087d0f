#include "crownlab/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace crownlab {

double simplex_infeasibility(const RealMat& A, const RealVec& b) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (b.size() != m) throw std::invalid_argument("simplex: dimension mismatch");

  // Tableau columns: n structural, m artificial, rhs.
  RealMat T = RealMat::Zero(m + 1, n + m + 1);
  std::vector<Eigen::Index> basis(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double sign = b(i) < 0 ? -1.0 : 1.0;
    T.row(i).head(n) = sign * A.row(i);
    T(i, n + i) = 1.0;
    T(i, n + m) = sign * b(i);
    basis[i] = n + i;
  }
  // Objective row: minimize the sum of artificials, expressed in the
  // nonbasic structural variables.
  for (Eigen::Index i = 0; i < m; ++i) {
    T.row(m).head(n) -= T.row(i).head(n);
    T(m, n + m) -= T(i, n + m);
  }

  constexpr double eps = 1e-12;
  const int max_iter = 50 * static_cast<int>(n + m) + 100;
  for (int iter = 0; iter < max_iter; ++iter) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (T(m, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (T(i, enter) > eps) {
        const double ratio = T(i, n + m) / T(i, enter);
        if (ratio < best - eps || (std::abs(ratio - best) <= eps && leave >= 0 && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) break;  // unbounded direction cannot lower a bounded-below objective

    T.row(leave) /= T(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i != leave && T(i, enter) != 0.0) T.row(i) -= T(i, enter) * T.row(leave);
    }
    basis[leave] = enter;
  }
  return std::max(0.0, -T(m, n + m));
}

}  // namespace crownlab
