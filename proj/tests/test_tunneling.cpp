#include "geo3ap/tunneling.hpp"

#include "geo3ap/generators.hpp"
#include "geo3ap/oracle.hpp"

#include <doctest.h>

#include <numeric>

using namespace geo3ap;

namespace {

TunnelSystem random_tunnels(Rng& rng, int elements, int k) {
  TunnelSystem ts;
  ts.front.resize(elements, k);
  ts.back.resize(elements, k);
  for (int e = 0; e < elements; ++e)
    for (int t = 0; t < k; ++t) {
      ts.front(e, t) = rng.rational(12, 2);
      ts.back(e, t) = rng.rational(12, 2);
    }
  return ts;
}

Rational tunnel_perimeter(const TunnelSystem& ts, int a, int b, int c) {
  return tunneling_distance(ts, a, b) + tunneling_distance(ts, b, c) + tunneling_distance(ts, a, c);
}

// independent oracle for max-3AP under arbitrary tunneling tables
Rational brute_force_tunneling_max(const TunnelSystem& ts, const std::vector<int>& X,
                                   const std::vector<int>& Y, const std::vector<int>& Z) {
  const int n = static_cast<int>(X.size());
  std::vector<int> sigma(n), tau(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  bool have = false;
  Rational best(0);
  do {
    std::iota(tau.begin(), tau.end(), 0);
    do {
      Rational v(0);
      for (int i = 0; i < n; ++i) v += tunnel_perimeter(ts, X[i], Y[sigma[i]], Z[tau[i]]);
      if (!have || v > best) {
        best = v;
        have = true;
      }
    } while (std::next_permutation(tau.begin(), tau.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best;
}

}  // namespace

TEST_CASE("tunnels from a polyhedral norm") {
  const auto manhattan = manhattan_norm_2d();
  const std::vector<Point> pts = {make_point_int({2, 1}), make_point_int({0, 0})};
  const TunnelSystem ts = tunnels_from_polyhedral(manhattan, pts);
  CHECK(ts.front(0, 0) == 3);   // (2,1) . (1,1)
  CHECK(ts.front(0, 1) == -1);  // (2,1) . (-1,1)
  CHECK(ts.back(0, 0) == -3);
  CHECK(ts.back(0, 1) == 1);
  CHECK(ts.front(1, 0) == 0);
  CHECK(ts.back(1, 1) == 0);

  const TunnelSystem tl = tunnels_from_polyhedral(linf_norm_2d(), pts);
  CHECK(tl.front(0, 0) == 2);
  CHECK(tl.front(0, 1) == 1);
}

TEST_CASE("tunneling distance reproduces the polyhedral distance") {
  const std::vector<Point> pts = {make_point_int({0, 0}), make_point_int({2, 1})};
  const TunnelSystem ts = tunnels_from_polyhedral(manhattan_norm_2d(), pts);
  CHECK(tunneling_distance(ts, 0, 1) == 3);
  CHECK(tunneling_distance(ts, 1, 0) == 3);
  CHECK(tunneling_distance(ts, 0, 0) == 0);
  CHECK_THROWS_WITH_AS(tunneling_distance(ts, 0, 2), "unknown element", DomainError);
}

TEST_CASE("reduction identity on random points") {
  Rng rng(301);
  const auto hex = random_polyhedral_2d(rng, 3);
  const auto manhattan = manhattan_norm_2d();
  const auto maxnorm = linf_norm_2d();
  for (const PolyhedralNorm* norm : {&manhattan, &maxnorm, &hex}) {
    std::vector<Point> pts;
    for (int i = 0; i < 30; ++i) pts.push_back(random_point(rng, {2, 25, 4}));
    const TunnelSystem ts = tunnels_from_polyhedral(*norm, pts);
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = 0; b < pts.size(); ++b)
        CHECK(tunneling_distance(ts, static_cast<int>(a), static_cast<int>(b)) ==
              poly_distance(*norm, pts[a], pts[b]));
  }
}

TEST_CASE("general tunneling distances are symmetric") {
  Rng rng(302);
  const TunnelSystem ts = random_tunnels(rng, 6, 2);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      CHECK(tunneling_distance(ts, a, b) == tunneling_distance(ts, b, a));
}

TEST_CASE("cycle type enumeration") {
  CHECK(enumerate_cycle_types(1).size() == 8);
  CHECK(enumerate_cycle_types(2).size() == 64);
  CHECK(enumerate_cycle_types(3).size() == 216);

  // the slot derivation places complementary labels on the two edges at every
  // tunnel visit
  const CycleCatalog cat = CycleCatalog::build(2);
  for (int id = 0; id < cat.type_count(); ++id) {
    const CycleType& t = cat.type(id);
    const auto& slots = cat.slots_of(id);
    auto inc = [](int tunnel, int label) { return static_cast<std::uint16_t>(2 * tunnel + label); };
    auto has = [&](const SlotType& s, std::uint16_t a, std::uint16_t b) {
      if (a > b) std::swap(a, b);
      return s.inc_a == a && s.inc_b == b;
    };
    const auto& st = cat.slot_types();
    CHECK(has(st[slots[0]], inc(t.tunnel[0], t.label[0]), inc(t.tunnel[2], 1 - t.label[2])));
    CHECK(has(st[slots[1]], inc(t.tunnel[0], 1 - t.label[0]), inc(t.tunnel[1], t.label[1])));
    CHECK(has(st[slots[2]], inc(t.tunnel[1], 1 - t.label[1]), inc(t.tunnel[2], t.label[2])));
  }
}

TEST_CASE("outline streaming counts match the closed form") {
  for (const auto& [k, n] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {1, 3}, {1, 4},
                                                             {2, 1}, {2, 2}, {2, 3}}) {
    const int T = 8 * k * k * k;
    std::uint64_t count = 0;
    std::vector<std::uint16_t> last;
    enumerate_outlines(T, n, [&](const std::uint16_t* ids, int len) {
      ++count;
      // non-decreasing and lexicographically increasing stream
      for (int i = 1; i < len; ++i) CHECK(ids[i - 1] <= ids[i]);
      std::vector<std::uint16_t> cur(ids, ids + len);
      if (!last.empty()) CHECK(std::lexicographical_compare(last.begin(), last.end(), cur.begin(), cur.end()));
      last = std::move(cur);
    });
    CHECK(Integer(count) == outline_count(T, n));
  }
  CHECK(outline_count(64, 2) == 2080);
  CHECK(outline_count(64, 3) == 45760);
}

TEST_CASE("outline encoding") {
  const std::uint16_t ids[4] = {3, 3, 17, 20};
  const Outline o = Outline::from_ids(ids, 4);
  CHECK(o.encode() == "3x2,17,20");
  CHECK(o.total() == 4);
}

TEST_CASE("evaluate_outline_3ap") {
  const std::vector<Point> pts = {make_point_int({0, 0}), make_point_int({1, 0}),
                                  make_point_int({0, 1})};
  const TunnelSystem ts = tunnels_from_polyhedral(manhattan_norm_2d(), pts);
  const std::vector<int> X = {0}, Y = {1}, Z = {2};

  SUBCASE("the best single-cycle outline value equals the perimeter") {
    Rational best(0);
    const int T = 64;
    for (int t = 0; t < T; ++t) {
      Outline o;
      o.cycles = {{t, 1}};
      best = std::max(best, evaluate_outline_3ap(o, ts, X, Y, Z).value);
    }
    CHECK(best == 4);
  }

  SUBCASE("identical points evaluate to zero") {
    const std::vector<Point> same(3, make_point_int({2, 5}));
    const TunnelSystem ts0 = tunnels_from_polyhedral(manhattan_norm_2d(), same);
    Outline o;
    o.cycles = {{13, 1}};
    CHECK(evaluate_outline_3ap(o, ts0, X, Y, Z).value == 0);
  }

  SUBCASE("size mismatch is rejected") {
    Outline o;
    o.cycles = {{0, 2}};
    CHECK_THROWS_AS(evaluate_outline_3ap(o, ts, X, Y, Z), DomainError);
  }
}

TEST_CASE("every outline value is bounded by the optimum and the bound is attained") {
  Rng rng(303);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(2));
    const int k = 1 + static_cast<int>(rng.below(2));
    const TunnelSystem ts = random_tunnels(rng, 3 * n, k);
    std::vector<int> X(n), Y(n), Z(n);
    for (int i = 0; i < n; ++i) {
      X[i] = i;
      Y[i] = n + i;
      Z[i] = 2 * n + i;
    }
    const Rational oracle = brute_force_tunneling_max(ts, X, Y, Z);
    Rational best(0);
    bool have = false;
    enumerate_outlines(8 * k * k * k, n, [&](const std::uint16_t* ids, int len) {
      const Outline o = Outline::from_ids(ids, len);
      const Rational v = evaluate_outline_3ap(o, ts, X, Y, Z).value;
      CHECK(v <= oracle);  // soundness: no outline beats the true optimum
      if (!have || v > best) {
        best = v;
        have = true;
      }
    });
    CHECK(best == oracle);  // completeness: some outline attains it

    const auto solved = solve_max3ap_tunneling(ts, X, Y, Z);
    CHECK(*solved.solution.value.exact == oracle);
    // recovered triples re-evaluate to the reported value
    Rational recomputed(0);
    for (const auto& t : solved.solution.triples)
      recomputed += tunnel_perimeter(ts, X[t[0]], Y[t[1]], Z[t[2]]);
    CHECK(recomputed == *solved.solution.value.exact);
  }
}

TEST_CASE("polyhedral solver equals the brute-force oracle") {
  Rng rng(304);
  const auto hex = random_polyhedral_2d(rng, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(3));
    Norm norm;
    switch (trial % 3) {
      case 0: norm = Norm{manhattan_norm_2d()}; break;
      case 1: norm = Norm{linf_norm_2d()}; break;
      default: norm = Norm{hex}; break;
    }
    const auto inst = random_3ap(rng, n, norm);
    const auto solved = solve_max3ap_polyhedral(inst);
    const auto oracle = brute_force_3ap(inst, Sense::maximize);
    CHECK(*solved.solution.value.exact == *oracle.value.exact);
    CHECK(cover_value_exact(inst, solved.solution.triples) == *solved.solution.value.exact);
  }
}

TEST_CASE("spec example instance under the maximum norm") {
  Instance3AP inst;
  inst.norm = Norm{linf_norm_2d()};
  inst.X = {make_point_int({0, 0}), make_point_int({10, 0})};
  inst.Y = {make_point_int({1, 0}), make_point_int({0, 7})};
  inst.Z = {make_point_int({0, 1}), make_point_int({6, 6})};
  CHECK(*solve_max3ap_polyhedral(inst).solution.value.exact ==
        *brute_force_3ap(inst, Sense::maximize).value.exact);
}

TEST_CASE("deduplication changes counts but not optima") {
  const CycleCatalog cat1 = CycleCatalog::build(1);
  CHECK(cat1.type_count() == 8);
  CHECK(cat1.reps_3ap().size() == 7);
  CHECK(cat1.reps_3dm().size() == 2);
  const CycleCatalog cat2 = CycleCatalog::build(2);
  CHECK(cat2.reps_3ap().size() < 64);
  CHECK(cat2.reps_3dm().size() < 64);

  Rng rng(305);
  for (int trial = 0; trial < 8; ++trial) {
    const auto inst = random_3ap(rng, 1 + static_cast<int>(rng.below(3)),
                                 trial % 2 ? Norm{manhattan_norm_2d()} : Norm{linf_norm_2d()});
    SolveOptions plain, dedup;
    dedup.dedup = true;
    const auto a = solve_max3ap_polyhedral(inst, plain);
    const auto b = solve_max3ap_polyhedral(inst, dedup);
    CHECK(*a.solution.value.exact == *b.solution.value.exact);
    CHECK(b.stats.outlines_evaluated < a.stats.outlines_evaluated);
  }
}

TEST_CASE("thread count never changes the result") {
  Rng rng(306);
  for (int trial = 0; trial < 5; ++trial) {
    const auto inst = random_3ap(rng, 2 + static_cast<int>(rng.below(2)), Norm{manhattan_norm_2d()});
    SolveOptions serial, parallel;
    serial.threads = 1;
    parallel.threads = 4;
    const auto a = solve_max3ap_polyhedral(inst, serial);
    const auto b = solve_max3ap_polyhedral(inst, parallel);
    CHECK(*a.solution.value.exact == *b.solution.value.exact);
    CHECK(a.solution.triples == b.solution.triples);
    CHECK(a.winning.encode() == b.winning.encode());
    CHECK(a.stats.outlines_evaluated == b.stats.outlines_evaluated);
  }
}

TEST_CASE("the tunnel-count guard refuses large k unless forced") {
  Rng rng(307);
  const auto inst = random_3ap(rng, 1, Norm{random_polyhedral_2d(rng, 5)});
  CHECK_THROWS_WITH_AS(solve_max3ap_polyhedral(inst), "outline space too large", DomainError);
  SolveOptions forced;
  forced.force_k = true;
  const auto solved = solve_max3ap_polyhedral(inst, forced);
  CHECK(*solved.solution.value.exact == *brute_force_3ap(inst, Sense::maximize).value.exact);
}

TEST_CASE("3DM solver") {
  Rng rng(308);
  SUBCASE("single triple cost") {
    Instance3DM inst;
    inst.norm = Norm{manhattan_norm_2d()};
    inst.U = {make_point_int({0, 0}), make_point_int({1, 0}), make_point_int({0, 1})};
    CHECK(*solve_max3dm_polyhedral(inst).solution.value.exact == 4);
  }
  SUBCASE("matches the oracle and dominates the split 3AP value") {
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 1 + static_cast<int>(rng.below(3));
      const auto ap = random_3ap(rng, n, trial % 2 ? Norm{manhattan_norm_2d()} : Norm{linf_norm_2d()});
      Instance3DM dm;
      dm.norm = ap.norm;
      for (const auto& p : ap.X) dm.U.push_back(p);
      for (const auto& p : ap.Y) dm.U.push_back(p);
      for (const auto& p : ap.Z) dm.U.push_back(p);
      const auto solved = solve_max3dm_polyhedral(dm);
      CHECK(*solved.solution.value.exact == *brute_force_3dm(dm, Sense::maximize).value.exact);
      CHECK(*solved.solution.value.exact >= *solve_max3ap_polyhedral(ap).solution.value.exact);
      CHECK(cover_value_exact(dm, solved.solution.triples) == *solved.solution.value.exact);
    }
  }
  SUBCASE("3DM deduplication keeps the optimum") {
    for (int trial = 0; trial < 5; ++trial) {
      const auto dm = random_3dm(rng, 1 + static_cast<int>(rng.below(2)), Norm{manhattan_norm_2d()});
      SolveOptions dedup;
      dedup.dedup = true;
      CHECK(*solve_max3dm_polyhedral(dm).solution.value.exact ==
            *solve_max3dm_polyhedral(dm, dedup).solution.value.exact);
    }
  }
}

TEST_CASE("OutlineEvaluator agrees with the exact evaluation") {
  Rng rng(309);
  const TunnelSystem ts = random_tunnels(rng, 9, 2);
  const std::vector<int> X = {0, 1, 2}, Y = {3, 4, 5}, Z = {6, 7, 8};
  OutlineEvaluator eval(ts, X, Y, Z);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::uint16_t> ids;
    for (int i = 0; i < 3; ++i) ids.push_back(static_cast<std::uint16_t>(rng.below(64)));
    std::sort(ids.begin(), ids.end());
    const Outline o = Outline::from_ids(ids.data(), 3);
    CHECK(eval.value(o) == evaluate_outline_3ap(o, ts, X, Y, Z).value);
  }
}
