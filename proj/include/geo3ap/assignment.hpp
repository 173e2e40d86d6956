#pragma once

#include "geo3ap/instances.hpp"

#include <vector>

namespace geo3ap {

template <class Scalar>
struct CostMatrix {
  Mat<Scalar> entries;  // square
  Sense sense = Sense::minimize;
};

template <class Scalar>
struct AssignmentResult {
  std::vector<int> permutation;  // permutation[row] = column
  Scalar value{};
};

// Optimal assignment value for a square minimization matrix. Shortest
// augmenting paths with potentials; uses only +, - and comparisons, so the
// result is exact for any ordered exact scalar (Rational, integers).
template <class Scalar>
Scalar assignment_min_value(const Mat<Scalar>& cost) {
  const int n = static_cast<int>(cost.rows());
  std::vector<Scalar> u(n + 1, Scalar(0)), v(n + 1, Scalar(0)), minv(n + 1, Scalar(0));
  std::vector<int> row_of(n + 1, -1), way(n + 1, 0);
  std::vector<char> used(n + 1, 0), seen(n + 1, 0);
  for (int r = 0; r < n; ++r) {
    int j0 = n;  // virtual start column
    row_of[n] = r;
    std::fill(used.begin(), used.end(), 0);
    std::fill(seen.begin(), seen.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = row_of[j0];
      int j1 = -1;
      for (int j = 0; j < n; ++j) {
        if (used[j]) continue;
        Scalar cur = cost(i0, j) - u[i0] - v[j];
        if (!seen[j] || cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
          seen[j] = 1;
        }
        if (j1 < 0 || minv[j] < minv[j1]) j1 = j;
      }
      const Scalar delta = minv[j1];
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else if (seen[j]) {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] >= 0);
    // Augment along the alternating path back to the virtual column.
    while (j0 != n) {
      const int j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    }
  }
  Scalar total(0);
  for (int j = 0; j < n; ++j) total += cost(row_of[j], j);
  return total;
}

namespace detail {

// Minimum value over assignments that match `rows` (ascending) into a subset
// of `cols` (ascending). Builds the compacted matrix and reuses the solver.
template <class Scalar>
Scalar assignment_min_value_sub(const Mat<Scalar>& cost, const std::vector<int>& rows,
                                const std::vector<int>& cols) {
  const int m = static_cast<int>(rows.size());
  if (m == 0) return Scalar(0);
  Mat<Scalar> sub(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) sub(i, j) = cost(rows[i], cols[j]);
  return assignment_min_value(sub);
}

}  // namespace detail

// Optimal assignment with ties broken toward the lexicographically smallest
// permutation, fixed row by row. O(n^5); intended for solution recovery and
// modest sizes, not for inner loops.
template <class Scalar>
AssignmentResult<Scalar> hungarian(const CostMatrix<Scalar>& m) {
  const int n = static_cast<int>(m.entries.rows());
  if (n == 0 || m.entries.cols() != n) throw DomainError("cost matrix must be square and nonempty");
  Mat<Scalar> cost = m.entries;
  if (m.sense == Sense::maximize)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) cost(i, j) = -cost(i, j);

  const Scalar best = assignment_min_value(cost);
  std::vector<int> perm(n, -1);
  std::vector<char> used_col(n, 0);
  Scalar fixed(0);
  for (int r = 0; r < n; ++r) {
    std::vector<int> tail_rows;
    for (int i = r + 1; i < n; ++i) tail_rows.push_back(i);
    bool placed = false;
    for (int j = 0; j < n && !placed; ++j) {
      if (used_col[j]) continue;
      std::vector<int> tail_cols;
      for (int c = 0; c < n; ++c)
        if (!used_col[c] && c != j) tail_cols.push_back(c);
      Scalar total = fixed + cost(r, j) + detail::assignment_min_value_sub(cost, tail_rows, tail_cols);
      if (total == best) {
        perm[r] = j;
        used_col[j] = 1;
        fixed += cost(r, j);
        placed = true;
      }
    }
    if (!placed) throw InternalError("hungarian: no column extends an optimal assignment");
  }
  AssignmentResult<Scalar> out;
  out.permutation = std::move(perm);
  out.value = (m.sense == Sense::maximize) ? Scalar(-best) : best;
  return out;
}

}  // namespace geo3ap
