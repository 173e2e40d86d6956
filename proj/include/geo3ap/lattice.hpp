#pragma once

#include "geo3ap/norms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace geo3ap {

// Integer lattice whose fundamental triangles are the unique cheapest
// triangles: every non-fundamental triple of lattice points has perimeter at
// least delta + 1. Built for a 2-D polyhedral norm rescaled so that the
// distance between horizontally adjacent integer points equals their
// coordinate difference.
struct LatticeSpec {
  PolyhedralNorm norm;  // rescaled; original distances = rescaled * scale
  Rational scale;
  Integer alpha;                // >= 3
  std::array<Point, 5> points;  // p0..p3 on the x-axis at spacing alpha; p4 above
  Point v1, v2;                 // v1 = p2 - p1, v2 = p4 - p1; integer vectors
  Rational delta;               // |v1| + |v2| + |v1 - v2|, in (3a, 11a/3]
};

// A rational point above the x-axis whose distances from p1 = (a, 0) and
// p2 = (2a, 0) are exactly 4a/3 while p0 = (0,0) and p3 = (3a, 0) are strictly
// farther than 4a/3. Computed by exact polygon-boundary intersection of the
// two scaled balls; if the strict inequalities ever fail on the constructed
// point, a downward dyadic perturbation inside the open feasible region is
// searched (depth 64) before reporting an internal failure.
Point find_p4(const PolyhedralNorm& rescaled_norm, const Integer& alpha);

// Full construction: rescales the norm, finds p4 at the base spacing, then
// multiplies the spacing by the smallest integer that (a) clears the
// denominators of p4 and (b) gives the separation inequalities an absolute
// margin of 1. All invariants are re-verified exactly.
LatticeSpec choose_alpha(const PolyhedralNorm& norm);

int lattice_point_color(long a, long b);  // (a + 2b) mod 3

// True iff the three lattice-coordinate points form a translate of
// {(0,0),(1,0),(0,1)} (up) or {(1,0),(0,1),(1,1)} (down).
bool fundamental_triangle_test(const std::array<std::pair<long, long>, 3>& tri);

struct LatticeReport {
  bool pass = false;
  std::string message;
  std::uint64_t pairs_checked = 0;
  std::uint64_t triples_checked = 0;
  std::optional<std::array<std::pair<long, long>, 2>> bad_pair;
  std::optional<std::array<std::pair<long, long>, 3>> bad_triple;
};

// Exhaustive exact check over the window 0 <= a, b < W: (1) pairs not sharing
// a fundamental triangle lie at distance >= |v1 - v2| + 1, pairs that do share
// one realize exactly {|v1|, |v2|, |v1-v2|}; (2) every triple is fundamental
// with perimeter exactly delta, or has perimeter >= delta + 1. On failure the
// lexicographically first offender is reported.
LatticeReport verify_lattice(const LatticeSpec& spec, int window);

// Objective threshold B = ceil(n * delta) separating YES instances built from
// n fundamental triangles from everything else.
Integer min3ap_threshold(const LatticeSpec& spec, const Integer& n);

}  // namespace geo3ap
