#pragma once

#include "geo3ap/norms.hpp"

#include <array>
#include <cstdio>
#include <string>
#include <vector>

namespace geo3ap {

enum class Sense { minimize, maximize };

struct Instance3AP {
  Norm norm;
  std::vector<Point> X, Y, Z;

  int size() const { return static_cast<int>(X.size()); }
  int dimension() const { return X.empty() ? 0 : static_cast<int>(X.front().size()); }
  void validate() const;
};

struct Instance3DM {
  Norm norm;
  std::vector<Point> U;

  int triple_count() const { return static_cast<int>(U.size()) / 3; }
  int dimension() const { return U.empty() ? 0 : static_cast<int>(U.front().size()); }
  void validate() const;
};

struct Value {
  std::optional<Rational> exact;
  double approx = 0.0;

  static Value from_exact(Rational r) {
    Value v;
    v.approx = to_double(r);
    v.exact = std::move(r);
    return v;
  }
  static Value from_approx(double d) {
    Value v;
    v.approx = d;
    return v;
  }
};

// Stable decimal rendering used everywhere a double reaches an output file.
inline std::string format_double(double d) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", d);
  return buf;
}

struct Solution {
  // 3AP: (x index, y index, z index), one triple per x, sorted by x index.
  // 3DM: sorted index triples into U, sorted by first element.
  std::vector<std::array<int, 3>> triples;
  Value value;
};

inline void Instance3AP::validate() const {
  if (X.empty() || X.size() != Y.size() || X.size() != Z.size())
    throw DomainError("instance needs |X| = |Y| = |Z| >= 1");
  const Eigen::Index dim = X.front().size();
  auto check = [&](const std::vector<Point>& pts) {
    for (const Point& p : pts)
      if (p.size() != dim) throw DomainError("dimension mismatch");
  };
  check(X);
  check(Y);
  check(Z);
  if (int nd = norm_dimension(norm); nd >= 0 && nd != dim)
    throw DomainError("dimension mismatch");
}

inline void Instance3DM::validate() const {
  if (U.empty() || U.size() % 3 != 0)
    throw DomainError("instance needs |U| divisible by 3 and nonzero");
  const Eigen::Index dim = U.front().size();
  for (const Point& p : U)
    if (p.size() != dim) throw DomainError("dimension mismatch");
  if (int nd = norm_dimension(norm); nd >= 0 && nd != dim)
    throw DomainError("dimension mismatch");
}

}  // namespace geo3ap
