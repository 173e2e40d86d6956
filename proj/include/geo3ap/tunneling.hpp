#pragma once

#include "geo3ap/assignment.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace geo3ap {

// Front/back distance tables of a tunnel system: row = element, column =
// tunnel. The induced distance between elements a and b is
//   max over tunnels t of { F(a,t)+B(b,t), B(a,t)+F(b,t) },
// symmetric by construction.
struct TunnelSystem {
  RatMat front;
  RatMat back;

  int tunnel_count() const { return static_cast<int>(front.cols()); }
  int element_count() const { return static_cast<int>(front.rows()); }
  void validate() const {
    if (front.rows() != back.rows() || front.cols() != back.cols())
      throw DomainError("front/back tables must have identical shape");
    if (front.cols() < 1) throw DomainError("tunnel system needs k >= 1 tunnels");
  }
};

// F(x, h_i) = x . h_i and B(x, h_i) = -x . h_i; the facet vectors act as
// tunnels and the induced distance reproduces the polyhedral distance exactly.
TunnelSystem tunnels_from_polyhedral(const PolyhedralNorm& norm, const std::vector<Point>& elements);

Rational tunneling_distance(const TunnelSystem& ts, int a, int b);

// ---------------------------------------------------------------------------
// Legal six-cycles x - t_i - y - t_j - z - t_l - x. The second, fourth and
// sixth edge labels are forced to be the complements of the first, third and
// fifth, which is exactly the legality condition, so enumerating (i, j, l) and
// the three free labels yields all 8k^3 combinatorially distinct legal types.
// Labels: 0 = front, 1 = back. Incidence id = 2 * tunnel + label.

struct CycleType {
  std::array<int, 3> tunnel;
  std::array<int, 3> label;  // labels of edges 1, 3, 5
};

// A slot is an anonymized element position of a cycle type, characterized by
// its two (tunnel, label) incidences; the cost of putting an element there is
// the sum of the two corresponding table entries.
struct SlotType {
  std::uint16_t inc_a, inc_b;  // inc_a <= inc_b
};

class CycleCatalog {
 public:
  static CycleCatalog build(int k);

  int k() const { return k_; }
  int type_count() const { return static_cast<int>(types_.size()); }
  const CycleType& type(int id) const { return types_[id]; }
  // slot ids at the X, Y, Z positions of the type
  const std::array<std::uint16_t, 3>& slots_of(int id) const { return slots_of_type_[id]; }
  const std::vector<SlotType>& slot_types() const { return slot_types_; }
  int slot_type_count() const { return static_cast<int>(slot_types_.size()); }

  // Deduplicated type lists. Two types are interchangeable for 3AP when their
  // class-labeled slot triples coincide, and for 3DM already when the slot
  // multisets coincide (a traversal reversal swaps the Y and Z slots, which a
  // single 3n x 3n assignment cannot distinguish). Representatives are the
  // smallest type ids of each class, listed ascending.
  const std::vector<int>& reps_3ap() const { return reps_3ap_; }
  const std::vector<int>& reps_3dm() const { return reps_3dm_; }

 private:
  int k_ = 0;
  std::vector<CycleType> types_;
  std::vector<std::array<std::uint16_t, 3>> slots_of_type_;
  std::vector<SlotType> slot_types_;
  std::vector<int> reps_3ap_, reps_3dm_;
};

// enumerate_cycle_types in a fixed deterministic order: lexicographic in
// (i, j, l, b1, b3, b5) with front < back.
std::vector<CycleType> enumerate_cycle_types(int k);

struct Outline {
  std::vector<std::pair<int, int>> cycles;  // (type id, multiplicity), ids ascending
  int total() const {
    int t = 0;
    for (auto& c : cycles) t += c.second;
    return t;
  }
  std::string encode() const;  // e.g. "3x2,17" for {3,3,17}
  static Outline from_ids(const std::uint16_t* ids, int n);
};

// Number of size-n multisets over T symbols: C(n + T - 1, n).
Integer outline_count(int type_count, int n);

namespace detail {
template <class Leaf>
void enumerate_outlines_rec(int T, int n, int depth, int min_t, std::uint16_t* ids, Leaf& leaf) {
  if (depth == n) {
    leaf(static_cast<const std::uint16_t*>(ids), n);
    return;
  }
  for (int t = min_t; t < T; ++t) {
    ids[depth] = static_cast<std::uint16_t>(t);
    enumerate_outlines_rec(T, n, depth + 1, t, ids, leaf);
  }
}
}  // namespace detail

// Streams every size-n multiset over type ids [0, T) exactly once, in
// lexicographic order of the non-decreasing id sequence; never materializes
// the collection. leaf(const uint16_t* ids, int n).
template <class Leaf>
void enumerate_outlines(int T, int n, Leaf&& leaf) {
  std::vector<std::uint16_t> ids(n);
  detail::enumerate_outlines_rec(T, n, 0, 0, ids.data(), leaf);
}

struct SolveOptions {
  bool dedup = false;
  int threads = 1;
  // The outline space is C(n + 8k^3 - 1, 8k^3 - 1); refuse large k unless the
  // caller explicitly opts in.
  int max_k = 4;
  bool force_k = false;
};

struct SolveStats {
  std::uint64_t outlines_evaluated = 0;
  bool dedup = false;
  bool used_int64_fast_path = false;
};

struct TunnelSolveResult {
  Solution solution;  // triples are positions within the class lists passed in
  Outline winning;
  SolveStats stats;
};

TunnelSolveResult solve_max3ap_tunneling(const TunnelSystem& ts, const std::vector<int>& X,
                                         const std::vector<int>& Y, const std::vector<int>& Z,
                                         const SolveOptions& opts = {});
TunnelSolveResult solve_max3dm_tunneling(const TunnelSystem& ts, const std::vector<int>& U,
                                         const SolveOptions& opts = {});

TunnelSolveResult solve_max3ap_polyhedral(const Instance3AP& inst, const SolveOptions& opts = {});
TunnelSolveResult solve_max3dm_polyhedral(const Instance3DM& inst, const SolveOptions& opts = {});

// Exact evaluation of a single outline: per class, the n elements are matched
// to the n slot instances by a maximization assignment (slot instances ordered
// by type id, then instance index; ties broken toward the lexicographically
// smallest permutation). Returns the summed value, exactly.
struct OutlineEvaluation {
  Rational value;
  std::array<std::vector<int>, 3> slot_of_elem;
};
OutlineEvaluation evaluate_outline_3ap(const Outline& o, const TunnelSystem& ts,
                                       const std::vector<int>& X, const std::vector<int>& Y,
                                       const std::vector<int>& Z);

struct OutlineEvaluation3DM {
  Rational value;
  std::vector<int> slot_of_elem;
};
OutlineEvaluation3DM evaluate_outline_3dm(const Outline& o, const TunnelSystem& ts,
                                          const std::vector<int>& U);

// Repeated exact outline-value queries against one fixed 3AP instance, without
// assignment recovery; uses the scaled integer fast path when the tables allow
// it. Not thread-safe (owns solver workspaces).
class OutlineEvaluator {
 public:
  OutlineEvaluator(const TunnelSystem& ts, std::vector<int> X, std::vector<int> Y,
                   std::vector<int> Z);
  ~OutlineEvaluator();
  OutlineEvaluator(OutlineEvaluator&&) noexcept;
  Rational value(const Outline& o);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace geo3ap
