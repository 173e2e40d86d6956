#pragma once

#include "geo3ap/instances.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <vector>

namespace geo3ap {

struct OracleLimits {
  // Size caps are configuration so callers can raise them deliberately.
  int max_n_3ap = 6;
  int max_u_3dm = 12;
};

template <class Scalar>
struct OracleSolution {
  std::vector<std::array<int, 3>> triples;
  Scalar value{};
};

// Exhaustive search over all (n!)^2 covers of a 3AP instance, driven by the
// three pairwise distance tables dxy(i,j) = d(x_i, y_j), dyz(j,l) = d(y_j, z_l),
// dzx(l,i) = d(z_l, x_i). Ties broken by the lexicographically smallest triple
// list. Independent of every solver code path.
template <class Scalar>
OracleSolution<Scalar> brute_force_3ap_tables(const Mat<Scalar>& dxy, const Mat<Scalar>& dyz,
                                              const Mat<Scalar>& dzx, Sense sense,
                                              const OracleLimits& limits = {}) {
  const int n = static_cast<int>(dxy.rows());
  if (n > limits.max_n_3ap) throw DomainError("instance too large for oracle");
  std::vector<int> sigma(n), tau(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  bool have = false;
  Scalar best{};
  std::vector<int> best_sigma, best_tau;
  auto lex_smaller = [&](const std::vector<int>& s, const std::vector<int>& t) {
    for (int i = 0; i < n; ++i) {
      if (s[i] != best_sigma[i]) return s[i] < best_sigma[i];
      if (t[i] != best_tau[i]) return t[i] < best_tau[i];
    }
    return false;
  };
  do {
    Scalar partial(0);
    for (int i = 0; i < n; ++i) partial += dxy(i, sigma[i]);
    std::iota(tau.begin(), tau.end(), 0);
    do {
      Scalar total = partial;
      for (int i = 0; i < n; ++i) total += dyz(sigma[i], tau[i]) + dzx(tau[i], i);
      bool better = !have || (sense == Sense::maximize ? best < total : total < best);
      if (better) {
        best = total;
        best_sigma = sigma;
        best_tau = tau;
        have = true;
      } else if (total == best && lex_smaller(sigma, tau)) {
        best_sigma = sigma;
        best_tau = tau;
      }
    } while (std::next_permutation(tau.begin(), tau.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  OracleSolution<Scalar> out;
  out.value = best;
  for (int i = 0; i < n; ++i) out.triples.push_back({i, best_sigma[i], best_tau[i]});
  return out;
}

// Optimum over all partitions of {0..3n-1} into unordered triples, given the
// full pairwise distance table. Enumeration is in lexicographic order of the
// canonical triple list, so keeping the first strict optimum realizes the
// lexicographic tie-break.
template <class Scalar>
OracleSolution<Scalar> brute_force_3dm_table(const Mat<Scalar>& dist, Sense sense,
                                             const OracleLimits& limits = {}) {
  const int m = static_cast<int>(dist.rows());
  if (m > limits.max_u_3dm) throw DomainError("instance too large for oracle");
  std::vector<char> taken(m, 0);
  std::vector<std::array<int, 3>> current;
  OracleSolution<Scalar> out;
  bool have = false;
  auto rec = [&](auto&& self, Scalar acc) -> void {
    int a = -1;
    for (int i = 0; i < m; ++i)
      if (!taken[i]) {
        a = i;
        break;
      }
    if (a < 0) {
      if (!have || (sense == Sense::maximize ? out.value < acc : acc < out.value)) {
        out.value = acc;
        out.triples = current;
        have = true;
      }
      return;
    }
    taken[a] = 1;
    for (int b = a + 1; b < m; ++b) {
      if (taken[b]) continue;
      taken[b] = 1;
      for (int c = b + 1; c < m; ++c) {
        if (taken[c]) continue;
        taken[c] = 1;
        current.push_back({a, b, c});
        self(self, acc + dist(a, b) + dist(b, c) + dist(a, c));
        current.pop_back();
        taken[c] = 0;
      }
      taken[b] = 0;
    }
    taken[a] = 0;
  };
  rec(rec, Scalar(0));
  return out;
}

// Instance-level wrappers. Exact (rational) tables for polyhedral/L1/Linf
// norms; floating tables otherwise (L2 comparisons then carry the documented
// 1e-9 tolerance on the caller's side).
Solution brute_force_3ap(const Instance3AP& inst, Sense sense, const OracleLimits& limits = {});
Solution brute_force_3dm(const Instance3DM& inst, Sense sense, const OracleLimits& limits = {});

// Recomputes the value of a cover from the instance; exact norms only.
Rational cover_value_exact(const Instance3AP& inst, const std::vector<std::array<int, 3>>& triples);
Rational cover_value_exact(const Instance3DM& inst, const std::vector<std::array<int, 3>>& triples);
double cover_value_approx(const Instance3AP& inst, const std::vector<std::array<int, 3>>& triples);

}  // namespace geo3ap
