#include "geo3ap/norms.hpp"

#include <cmath>
#include <cstdio>

namespace geo3ap {

namespace {

Rational abs_rational(const Rational& r) { return r < 0 ? Rational(-r) : r; }

void require_same_dimension(const Point& x, const Point& y) {
  if (x.size() != y.size()) throw DomainError("dimension mismatch");
}

}  // namespace

int exact_rank(RatMat m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  int rank = 0;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = row; r < rows; ++r) {
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    for (Eigen::Index r = row + 1; r < rows; ++r) {
      if (m(r, col) == 0) continue;
      Rational f = m(r, col) / m(row, col);
      for (Eigen::Index c = col; c < cols; ++c) m(r, c) -= f * m(row, c);
    }
    ++row;
    ++rank;
  }
  return rank;
}

PolyhedralNorm::PolyhedralNorm(RatMat facets) : h_(std::move(facets)) {
  if (h_.rows() < 1 || h_.cols() < 1)
    throw DomainError("polyhedral norm needs at least one facet vector");
  for (Eigen::Index i = 0; i < h_.rows(); ++i) {
    bool all_zero = true;
    for (Eigen::Index j = 0; j < h_.cols(); ++j)
      if (h_(i, j) != 0) all_zero = false;
    if (all_zero) throw DomainError("polyhedral norm facet vector is zero");
  }
  // Unbounded unit balls are not norms; reject them up front.
  if (exact_rank(h_) != h_.cols())
    throw DomainError("polyhedral norm facet vectors do not span the space");
}

Rational poly_distance(const PolyhedralNorm& norm, const Point& x, const Point& y) {
  require_same_dimension(x, y);
  if (x.size() != norm.dimension()) throw DomainError("dimension mismatch");
  Rational best(0);
  for (int i = 0; i < norm.facet_count(); ++i) {
    Rational dot(0);
    for (Eigen::Index j = 0; j < x.size(); ++j) dot += norm.facets()(i, j) * (x(j) - y(j));
    Rational mag = abs_rational(dot);
    if (mag > best) best = mag;
  }
  return best;
}

LpNorm LpNorm::make(Rational exponent) {
  if (exponent < 1) throw DomainError("Lp norm requires p >= 1");
  return LpNorm{std::move(exponent), false};
}

LpDistance lp_distance(const LpNorm& norm, const Point& x, const Point& y) {
  require_same_dimension(x, y);
  LpDistance out;
  if (norm.infinite) {
    Rational best(0);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      Rational d = abs_rational(x(i) - y(i));
      if (d > best) best = d;
    }
    out.exact = best;
    out.value = to_double(best);
    return out;
  }
  if (norm.p == 1) {
    Rational sum(0);
    for (Eigen::Index i = 0; i < x.size(); ++i) sum += abs_rational(x(i) - y(i));
    out.exact = sum;
    out.power_sum = sum;
    out.value = to_double(sum);
    return out;
  }
  if (norm.integral_p()) {
    const unsigned long e = norm.p.get_num().get_ui();
    Rational sum(0);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      Rational d = abs_rational(x(i) - y(i));
      sum += make_rational(pow_integer(d.get_num(), e), pow_integer(d.get_den(), e));
    }
    out.power_sum = sum;
    out.value = std::pow(to_double(sum), 1.0 / static_cast<double>(e));
    return out;
  }
  const double p = to_double(norm.p);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    sum += std::pow(std::fabs(to_double(x(i)) - to_double(y(i))), p);
  out.value = std::pow(sum, 1.0 / p);
  return out;
}

bool norm_has_exact_distances(const Norm& norm) {
  if (std::holds_alternative<PolyhedralNorm>(norm)) return true;
  const auto& lp = std::get<LpNorm>(norm);
  return lp.infinite || lp.p == 1;
}

int norm_dimension(const Norm& norm) {
  if (const auto* poly = std::get_if<PolyhedralNorm>(&norm)) return poly->dimension();
  return -1;
}

Rational exact_distance(const Norm& norm, const Point& x, const Point& y) {
  if (const auto* poly = std::get_if<PolyhedralNorm>(&norm)) return poly_distance(*poly, x, y);
  auto d = lp_distance(std::get<LpNorm>(norm), x, y);
  if (!d.exact) throw DomainError("norm has no exact rational distances");
  return *d.exact;
}

double approx_distance(const Norm& norm, const Point& x, const Point& y) {
  if (const auto* poly = std::get_if<PolyhedralNorm>(&norm))
    return to_double(poly_distance(*poly, x, y));
  return lp_distance(std::get<LpNorm>(norm), x, y).value;
}

Rational perimeter_exact(const Norm& norm, const Point& x, const Point& y, const Point& z) {
  return exact_distance(norm, x, y) + exact_distance(norm, y, z) + exact_distance(norm, z, x);
}

double perimeter(const Norm& norm, const Point& x, const Point& y, const Point& z) {
  return approx_distance(norm, x, y) + approx_distance(norm, y, z) + approx_distance(norm, z, x);
}

std::pair<PolyhedralNorm, Rational> rescale_to_unit_e1(const PolyhedralNorm& norm) {
  if (norm.dimension() != 2) throw DomainError("rescale_to_unit_e1 requires a 2-D norm");
  Rational c(0);
  for (int i = 0; i < norm.facet_count(); ++i) {
    Rational mag = abs_rational(norm.facets()(i, 0));
    if (mag > c) c = mag;
  }
  if (c == 0) throw DomainError("all facet vectors have zero first coordinate");
  RatMat scaled = norm.facets();
  for (Eigen::Index i = 0; i < scaled.rows(); ++i)
    for (Eigen::Index j = 0; j < scaled.cols(); ++j) scaled(i, j) /= c;
  return {PolyhedralNorm(std::move(scaled)), c};
}

PolyhedralNorm manhattan_norm_2d() {
  RatMat h(2, 2);
  h << Rational(1), Rational(1), Rational(-1), Rational(1);
  return PolyhedralNorm(std::move(h));
}

PolyhedralNorm linf_norm_2d() {
  RatMat h(2, 2);
  h << Rational(1), Rational(0), Rational(0), Rational(1);
  return PolyhedralNorm(std::move(h));
}

}  // namespace geo3ap
