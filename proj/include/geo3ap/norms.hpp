#pragma once

#include "geo3ap/types.hpp"

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace geo3ap {

/// Norm with a centrally symmetric polytope unit ball, given by the facet
/// vectors h_1..h_k of its half-space representation. The induced distance is
/// d(x, y) = max_i |h_i . (x - y)|, which is a genuine norm exactly when the
/// facet vectors span the whole space; that is validated at construction.
class PolyhedralNorm {
 public:
  // facets: k x s matrix, one facet vector per row.
  explicit PolyhedralNorm(RatMat facets);

  int facet_count() const { return static_cast<int>(h_.rows()); }
  int dimension() const { return static_cast<int>(h_.cols()); }
  const RatMat& facets() const { return h_; }
  Point facet(int i) const { return h_.row(i).transpose(); }

 private:
  RatMat h_;
};

struct LpNorm {
  Rational p;        // ignored when infinite
  bool infinite = false;

  static LpNorm make(Rational exponent);
  static LpNorm inf() { return LpNorm{Rational(0), true}; }
  bool integral_p() const { return !infinite && p.get_den() == 1; }
};

// LpNorm first so that Norm (and the instance types holding one) remain
// default-constructible.
using Norm = std::variant<LpNorm, PolyhedralNorm>;

// d(x, y) = max_i |h_i . (x - y)|, exact.
Rational poly_distance(const PolyhedralNorm& norm, const Point& x, const Point& y);

struct LpDistance {
  double value = 0.0;                 // always populated; relative error <= 1e-12
  std::optional<Rational> exact;      // populated for p = 1 and p = infinity
  std::optional<Rational> power_sum;  // sum |x_i - y_i|^p, populated for integer p
};

LpDistance lp_distance(const LpNorm& norm, const Point& x, const Point& y);

// True when distances under the norm are representable exactly as rationals
// (polyhedral norms, L1, Linf).
bool norm_has_exact_distances(const Norm& norm);
int norm_dimension(const Norm& norm);  // -1 for Lp norms (any dimension)

Rational exact_distance(const Norm& norm, const Point& x, const Point& y);
double approx_distance(const Norm& norm, const Point& x, const Point& y);

// Perimeter cost d(x,y) + d(y,z) + d(z,x).
Rational perimeter_exact(const Norm& norm, const Point& x, const Point& y, const Point& z);
double perimeter(const Norm& norm, const Point& x, const Point& y, const Point& z);

// Divides every facet vector by c = max_i |h_i1| so that the distance of
// (1, 0) from the origin becomes 1; returns the rescaled norm and c. Distances
// under the rescaled norm are 1/c times the original ones. 2-D only.
std::pair<PolyhedralNorm, Rational> rescale_to_unit_e1(const PolyhedralNorm& norm);

// Exact row rank by Gaussian elimination; consumes the matrix.
int exact_rank(RatMat m);

PolyhedralNorm manhattan_norm_2d();  // h = {(1,1), (-1,1)}
PolyhedralNorm linf_norm_2d();       // h = {(1,0), (0,1)}

}  // namespace geo3ap
