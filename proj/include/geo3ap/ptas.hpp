#pragma once

#include "geo3ap/tunneling.hpp"

namespace geo3ap {

// Polygonal under-approximation of the 2-D Euclidean norm. Every direction is
// an exact rational point of the unit circle (tangent half-angle
// parametrization), and the contraction certificate is exact:
//   contraction * |v|_2  <=  max_i |h_i . v|  <=  |v|_2   for every v.
struct ApproxScheme {
  Rational epsilon;
  PolyhedralNorm directions;
  Rational contraction;  // >= 1 - epsilon
  int k() const { return directions.facet_count(); }
};

// Directions come from a fixed refinement chain indexed by dyadic contraction
// targets 1 - 2^-level, so the direction set for a smaller eps always contains
// the set for a larger one; that makes the polygonal optimum monotone in eps.
// k(eps) grows as Theta(1 / sqrt(eps)).
ApproxScheme polygonal_norm_for_eps(const Rational& eps);

struct PtasResult {
  // solution.value is the Euclidean re-evaluation V of the returned triples;
  // (1 - eps) * OPT <= V <= OPT.
  Solution solution;
  Rational polygonal_value;  // exact optimum under the polygonal norm
  ApproxScheme scheme;
  Outline winning;
  SolveStats stats;
};

PtasResult ptas_solve_max3ap(const Instance3AP& inst, const Rational& eps,
                             const SolveOptions& opts = {});

// Smallest-denominator rational strictly between lo and hi (Stern-Brocot).
Rational simplest_rational_between(const Rational& lo, const Rational& hi);

// Predicted outline count for a PTAS run at the given eps and instance size.
Integer ptas_outline_count(const Rational& eps, int n);

}  // namespace geo3ap
