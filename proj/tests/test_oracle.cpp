#include "geo3ap/oracle.hpp"

#include "geo3ap/generators.hpp"

#include <doctest.h>

using namespace geo3ap;

namespace {

Instance3AP manhattan_unit_triangle() {
  Instance3AP inst;
  inst.norm = Norm{manhattan_norm_2d()};
  inst.X = {make_point_int({0, 0})};
  inst.Y = {make_point_int({1, 0})};
  inst.Z = {make_point_int({0, 1})};
  return inst;
}

}  // namespace

TEST_CASE("n = 1 covers are the unique triple") {
  const auto inst = manhattan_unit_triangle();
  const auto max = brute_force_3ap(inst, Sense::maximize);
  CHECK(*max.value.exact == 4);
  CHECK(max.triples == std::vector<std::array<int, 3>>{{0, 0, 0}});
  CHECK(*brute_force_3ap(inst, Sense::minimize).value.exact == 4);
}

TEST_CASE("n = 2 instances match explicit enumeration over the 4 covers") {
  Rng rng(17);
  for (int t = 0; t < 25; ++t) {
    const auto inst = random_3ap(rng, 2, Norm{manhattan_norm_2d()});
    auto per = [&](int i, int j, int l) {
      return perimeter_exact(inst.norm, inst.X[i], inst.Y[j], inst.Z[l]);
    };
    const Rational covers[4] = {
        per(0, 0, 0) + per(1, 1, 1), per(0, 0, 1) + per(1, 1, 0),
        per(0, 1, 0) + per(1, 0, 1), per(0, 1, 1) + per(1, 0, 0)};
    const Rational want_max = *std::max_element(covers, covers + 4);
    const Rational want_min = *std::min_element(covers, covers + 4);
    CHECK(*brute_force_3ap(inst, Sense::maximize).value.exact == want_max);
    CHECK(*brute_force_3ap(inst, Sense::minimize).value.exact == want_min);
  }
}

TEST_CASE("reported values recompute from the triples") {
  Rng rng(18);
  for (int t = 0; t < 10; ++t) {
    const auto inst = random_3ap(rng, 3, Norm{linf_norm_2d()});
    const auto sol = brute_force_3ap(inst, Sense::maximize);
    CHECK(cover_value_exact(inst, sol.triples) == *sol.value.exact);
  }
}

TEST_CASE("size limits are configuration") {
  Rng rng(19);
  const auto inst = random_3ap(rng, 7, Norm{manhattan_norm_2d()});
  CHECK_THROWS_WITH_AS(brute_force_3ap(inst, Sense::maximize), "instance too large for oracle",
                       DomainError);
  OracleLimits lim;
  lim.max_n_3ap = 7;
  CHECK_NOTHROW(brute_force_3ap(inst, Sense::maximize, lim));
}

TEST_CASE("3DM oracle") {
  SUBCASE("single triple") {
    Instance3DM inst;
    inst.norm = Norm{manhattan_norm_2d()};
    inst.U = {make_point_int({0, 0}), make_point_int({1, 0}), make_point_int({0, 1})};
    const auto sol = brute_force_3dm(inst, Sense::maximize);
    CHECK(*sol.value.exact == 4);
    CHECK(sol.triples == std::vector<std::array<int, 3>>{{0, 1, 2}});
  }

  SUBCASE("3n = 6 equals enumeration over the 10 partitions") {
    Rng rng(20);
    for (int t = 0; t < 10; ++t) {
      const auto inst = random_3dm(rng, 2, Norm{manhattan_norm_2d()});
      // the ten partitions of {0..5} into two triples, first triple containing 0
      static const int parts[10][2][3] = {
          {{0, 1, 2}, {3, 4, 5}}, {{0, 1, 3}, {2, 4, 5}}, {{0, 1, 4}, {2, 3, 5}},
          {{0, 1, 5}, {2, 3, 4}}, {{0, 2, 3}, {1, 4, 5}}, {{0, 2, 4}, {1, 3, 5}},
          {{0, 2, 5}, {1, 3, 4}}, {{0, 3, 4}, {1, 2, 5}}, {{0, 3, 5}, {1, 2, 4}},
          {{0, 4, 5}, {1, 2, 3}}};
      auto per = [&](const int* tr) {
        return perimeter_exact(inst.norm, inst.U[tr[0]], inst.U[tr[1]], inst.U[tr[2]]);
      };
      Rational best = per(parts[0][0]) + per(parts[0][1]);
      for (int i = 1; i < 10; ++i) best = std::max(best, Rational(per(parts[i][0]) + per(parts[i][1])));
      CHECK(*brute_force_3dm(inst, Sense::maximize).value.exact == best);
    }
  }

  SUBCASE("3DM relaxes 3AP") {
    Rng rng(21);
    for (int t = 0; t < 10; ++t) {
      const auto ap = random_3ap(rng, 2, Norm{manhattan_norm_2d()});
      Instance3DM dm;
      dm.norm = ap.norm;
      for (const auto& p : ap.X) dm.U.push_back(p);
      for (const auto& p : ap.Y) dm.U.push_back(p);
      for (const auto& p : ap.Z) dm.U.push_back(p);
      CHECK(*brute_force_3dm(dm, Sense::maximize).value.exact >=
            *brute_force_3ap(ap, Sense::maximize).value.exact);
    }
  }

  SUBCASE("size cap") {
    Rng rng(22);
    const auto inst = random_3dm(rng, 5, Norm{manhattan_norm_2d()});
    CHECK_THROWS_AS(brute_force_3dm(inst, Sense::maximize), DomainError);
  }
}
