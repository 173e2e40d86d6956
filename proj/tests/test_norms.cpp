#include "geo3ap/norms.hpp"

#include "geo3ap/generators.hpp"
#include "geo3ap/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace geo3ap;

namespace {
Rational abs_r(const Rational& r) { return r < 0 ? Rational(-r) : r; }
}  // namespace

TEST_CASE("polyhedral distances on the reference norms") {
  const auto manhattan = manhattan_norm_2d();
  const auto maxnorm = linf_norm_2d();
  const Point o = make_point_int({0, 0});
  const Point p = make_point_int({2, 1});

  CHECK(poly_distance(manhattan, o, p) == 3);  // |2| + |1|
  CHECK(poly_distance(maxnorm, o, p) == 2);    // max(|2|, |1|)
  CHECK(poly_distance(manhattan, p, p) == 0);
  CHECK(poly_distance(manhattan, p, o) == poly_distance(manhattan, o, p));
}

TEST_CASE("polyhedral norm construction is validated") {
  RatMat zero_row(2, 2);
  zero_row << Rational(1), Rational(0), Rational(0), Rational(0);
  CHECK_THROWS_AS(PolyhedralNorm{zero_row}, DomainError);

  RatMat rank1(2, 2);
  rank1 << Rational(1), Rational(0), Rational(2), Rational(0);
  CHECK_THROWS_AS(PolyhedralNorm{rank1}, DomainError);

  const Point p3 = make_point_int({1, 2, 3});
  CHECK_THROWS_WITH_AS(poly_distance(manhattan_norm_2d(), p3, p3), "dimension mismatch",
                       DomainError);
}

TEST_CASE("Lp distances") {
  const Point o2 = make_point_int({0, 0});

  SUBCASE("p = 2 Pythagorean triple") {
    const auto d = lp_distance(LpNorm::make(Rational(2)), o2, make_point_int({3, 4}));
    REQUIRE(d.power_sum.has_value());
    CHECK(*d.power_sum == 25);
    CHECK(d.value == doctest::Approx(5.0).epsilon(1e-12));
    CHECK_FALSE(d.exact.has_value());
  }

  SUBCASE("p = infinity") {
    const auto d = lp_distance(LpNorm::inf(), o2, make_point_int({2, 1}));
    REQUIRE(d.exact.has_value());
    CHECK(*d.exact == 2);
  }

  SUBCASE("p = 3 with four unit differences") {
    const Point a = make_point_int({0, 0, 0, 0, 5});
    const Point b = make_point_int({1, -1, 1, 1, 5});
    const auto d = lp_distance(LpNorm::make(Rational(3)), a, b);
    REQUIRE(d.power_sum.has_value());
    CHECK(*d.power_sum == 4);
    CHECK(d.value == doctest::Approx(std::cbrt(4.0)).epsilon(1e-12));
  }

  SUBCASE("p = 1 is exact") {
    const auto d = lp_distance(LpNorm::make(Rational(1)), o2, make_point_int({2, -3}));
    REQUIRE(d.exact.has_value());
    CHECK(*d.exact == 5);
  }

  SUBCASE("fractional p still evaluates") {
    const auto d = lp_distance(LpNorm::make(make_rational(3, 2)), o2, make_point_int({1, 1}));
    CHECK(d.value == doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-12));
    CHECK_FALSE(d.power_sum.has_value());
  }

  CHECK_THROWS_AS(LpNorm::make(make_rational(1, 2)), DomainError);
}

TEST_CASE("perimeter costs") {
  const Point a = make_point_int({0, 0}), b = make_point_int({1, 0}), c = make_point_int({0, 1});
  CHECK(perimeter_exact(Norm{manhattan_norm_2d()}, a, b, c) == 4);  // 1 + 2 + 1
  CHECK(perimeter_exact(Norm{linf_norm_2d()}, a, b, c) == 3);
  CHECK(perimeter_exact(Norm{manhattan_norm_2d()}, a, a, a) == 0);
  CHECK(perimeter(Norm{LpNorm::make(Rational(2))}, a, b, c) ==
        doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(perimeter_exact(Norm{LpNorm::make(Rational(2))}, a, b, c), DomainError);
}

TEST_CASE("rescale to unit e1") {
  SUBCASE("already unit") {
    auto [norm, c] = rescale_to_unit_e1(linf_norm_2d());
    CHECK(c == 1);
    CHECK(norm.facets() == linf_norm_2d().facets());
    auto [mnorm, mc] = rescale_to_unit_e1(manhattan_norm_2d());
    CHECK(mc == 1);
  }
  SUBCASE("scaling divides by the max first coordinate") {
    RatMat h(2, 2);
    h << Rational(2), Rational(2), Rational(-2), Rational(2);
    auto [norm, c] = rescale_to_unit_e1(PolyhedralNorm(h));
    CHECK(c == 2);
    CHECK(norm.facets() == manhattan_norm_2d().facets());
  }
  SUBCASE("unit horizontal distance afterwards") {
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
      auto [norm, c] = rescale_to_unit_e1(random_polyhedral_2d(rng, 3));
      CHECK(poly_distance(norm, make_point_int({0, 0}), make_point_int({1, 0})) == 1);
      CHECK(c > 0);
    }
  }
}

TEST_CASE("norm axioms hold exactly on random inputs") {
  Rng rng(2024);
  auto rand_pt = [&] {
    Point p(2);
    p(0) = rng.rational(30, 4);
    p(1) = rng.rational(30, 4);
    return p;
  };
  const auto manhattan = manhattan_norm_2d();
  const auto maxnorm = linf_norm_2d();
  const auto hex = random_polyhedral_2d(rng, 3);
  for (int t = 0; t < 200; ++t) {
    const Point x = rand_pt(), y = rand_pt(), z = rand_pt();
    for (const auto* norm : {&manhattan, &maxnorm, &hex}) {
      const Rational dxy = poly_distance(*norm, x, y);
      CHECK(dxy == poly_distance(*norm, y, x));
      CHECK(dxy >= 0);
      CHECK((dxy == 0) == (x == y));
      CHECK(poly_distance(*norm, x, z) <= dxy + poly_distance(*norm, y, z));
    }
    // closed forms
    CHECK(poly_distance(manhattan, x, y) == abs_r(x(0) - y(0)) + abs_r(x(1) - y(1)));
    CHECK(poly_distance(maxnorm, x, y) == std::max(abs_r(x(0) - y(0)), abs_r(x(1) - y(1))));
    // positive homogeneity
    const Rational lambda = make_rational(rng.range(1, 9), rng.range(1, 9));
    Point sx = x, sy = y;
    sx *= lambda;
    sy *= lambda;
    CHECK(poly_distance(hex, sx, sy) == lambda * poly_distance(hex, x, y));
  }
}

TEST_CASE("integer p-th powers are exact integer sums") {
  Rng rng(77);
  for (int t = 0; t < 50; ++t) {
    const int dim = 1 + static_cast<int>(rng.below(6));
    Point a(dim), b(dim);
    Integer expect(0);
    const long p = rng.range(1, 4);
    for (int i = 0; i < dim; ++i) {
      a(i) = Rational(rng.range(-9, 9));
      b(i) = Rational(rng.range(-9, 9));
      Integer diff = abs_r(a(i) - b(i)).get_num();
      expect += pow_integer(diff, static_cast<unsigned long>(p));
    }
    const auto d = lp_distance(LpNorm::make(Rational(p)), a, b);
    REQUIRE(d.power_sum.has_value());
    CHECK(*d.power_sum == Rational(expect));
  }
}

TEST_CASE("exact rank") {
  RatMat m(3, 2);
  m << Rational(1), Rational(2), Rational(2), Rational(4), Rational(0), Rational(1);
  CHECK(exact_rank(m) == 2);
  RatMat r1(3, 2);
  r1 << Rational(1), Rational(2), Rational(2), Rational(4), Rational(-3), Rational(-6);
  CHECK(exact_rank(r1) == 1);
}
