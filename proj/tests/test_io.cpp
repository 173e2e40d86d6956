#include "geo3ap/io.hpp"

#include "geo3ap/generators.hpp"
#include "geo3ap/oracle.hpp"
#include "geo3ap/tunneling.hpp"

#include <doctest.h>

using namespace geo3ap;

namespace {

const char* kMinimal3AP = R"({
  "format": "geo3ap-instance/1",
  "norm": {"kind": "polyhedral", "h": [["1", "1"], ["-1", "1"]]},
  "X": [["0", "0"]],
  "Y": [["1", "0"]],
  "Z": [["0", "1"]]
})";

}  // namespace

TEST_CASE("minimal instance parses and solves") {
  const auto li = io::parse_instance(kMinimal3AP);
  REQUIRE_FALSE(li.is_3dm());
  const auto& inst = std::get<Instance3AP>(li.problem);
  CHECK(inst.size() == 1);
  CHECK(*solve_max3ap_polyhedral(inst).solution.value.exact == 4);
}

TEST_CASE("schema violations carry their path") {
  SUBCASE("size mismatch names both sizes") {
    const char* bad = R"({"format":"geo3ap-instance/1",
      "norm":{"kind":"lp","p":"2"},
      "X":[["0","0"],["1","1"]], "Y":[["1","0"]], "Z":[["0","1"]]})";
    CHECK_THROWS_WITH_AS(io::parse_instance(bad),
                         ": |X| = 2, |Y| = 1, |Z| = 1 must be equal", DomainError);
  }
  SUBCASE("unknown fields are rejected") {
    const char* bad = R"({"format":"geo3ap-instance/1","norm":{"kind":"lp","p":"2"},
      "X":[["0"]], "Y":[["0"]], "Z":[["0"]], "bogus": 1})";
    CHECK_THROWS_WITH_AS(io::parse_instance(bad), "/bogus: unknown field", DomainError);
  }
  SUBCASE("malformed rationals name their position") {
    const char* bad = R"({"format":"geo3ap-instance/1","norm":{"kind":"lp","p":"2"},
      "X":[["0","zero"]], "Y":[["0","0"]], "Z":[["0","0"]]})";
    try {
      io::parse_instance(bad);
      FAIL("expected a DomainError");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("/X/0/1") != std::string::npos);
    }
  }
  SUBCASE("floating point coordinates are rejected") {
    const char* bad = R"({"format":"geo3ap-instance/1","norm":{"kind":"lp","p":"2"},
      "X":[[0.5,"0"]], "Y":[["0","0"]], "Z":[["0","0"]]})";
    CHECK_THROWS_AS(io::parse_instance(bad), DomainError);
  }
  SUBCASE("unknown norm kind") {
    const char* bad = R"({"format":"geo3ap-instance/1","norm":{"kind":"spherical"},
      "X":[["0"]], "Y":[["0"]], "Z":[["0"]]})";
    CHECK_THROWS_AS(io::parse_instance(bad), DomainError);
  }
  SUBCASE("bad format tag") {
    CHECK_THROWS_AS(io::parse_instance(R"({"format":"nope/9"})"), DomainError);
  }
  SUBCASE("invalid JSON") {
    CHECK_THROWS_AS(io::parse_instance("{"), DomainError);
  }
}

TEST_CASE("instance round trips are the identity on emitted bytes") {
  Rng rng(701);
  for (int t = 0; t < 10; ++t) {
    io::LoadedInstance li{Instance3AP{}, io::Json()};
    if (t % 3 == 0) {
      li.problem = random_3dm(rng, 1 + static_cast<int>(rng.below(2)), Norm{LpNorm::inf()});
    } else if (t % 3 == 1) {
      li.problem = random_3ap(rng, 1 + static_cast<int>(rng.below(3)), Norm{manhattan_norm_2d()});
    } else {
      li.problem = random_3ap(rng, 2, Norm{LpNorm::make(make_rational(5, 2))});
      io::Json meta;
      meta["generator"] = "test";
      meta["seed"] = 7;
      li.metadata = std::move(meta);
    }
    const std::string once = io::emit_instance(li);
    const std::string twice = io::emit_instance(io::parse_instance(once));
    CHECK(once == twice);
  }
}

TEST_CASE("norm serialization") {
  const io::Json lp = io::norm_to_json(Norm{LpNorm::inf()});
  CHECK(lp["kind"] == "lp");
  CHECK(lp["p"] == "inf");
  const Norm back = io::parse_norm(lp, "/norm");
  CHECK(std::get<LpNorm>(back).infinite);

  const io::Json poly = io::norm_to_json(Norm{manhattan_norm_2d()});
  const Norm poly_back = io::parse_norm(poly, "/norm");
  CHECK(std::get<PolyhedralNorm>(poly_back).facets() == manhattan_norm_2d().facets());
}

TEST_CASE("results serialize deterministically") {
  io::ResultData r;
  r.algorithm = "tunneling-exact";
  r.problem = "3ap";
  r.sense = "max";
  r.value = Value::from_exact(make_rational(44, 3));
  r.triples = {{0, 1, 2}, {1, 0, 0}};
  r.winning_outline = "3x2";
  r.outlines_evaluated = 2080;
  r.dedup = false;
  const std::string a = io::emit_result(r);
  const std::string b = io::emit_result(r);
  CHECK(a == b);
  CHECK(a.find("\"exact\": \"44/3\"") != std::string::npos);
  CHECK(a.find("wall") == std::string::npos);  // timings never enter the file
}

TEST_CASE("graph files") {
  const PitGraph g = make_k333();
  const std::string bytes = io::emit_graph(g);
  const PitGraph back = io::parse_graph(bytes);
  CHECK(back.q == 3);
  CHECK(back.edges == g.edges);

  CHECK_THROWS_AS(io::parse_graph(R"({"q":2,"edges":[["1:0","1:1"]]})"), DomainError);
  CHECK_THROWS_AS(io::parse_graph(R"({"q":2,"edges":[["1:0","2:5"]]})"), DomainError);
  CHECK_THROWS_AS(io::parse_graph(R"({"q":2,"edges":[["4:0","2:1"]]})"), DomainError);
}

TEST_CASE("lattice spec files round trip") {
  const LatticeSpec spec = choose_alpha(linf_norm_2d());
  const std::string bytes = io::emit_lattice_spec(spec);
  const LatticeSpec back = io::parse_lattice_spec(bytes);
  CHECK(back.alpha == spec.alpha);
  CHECK(back.delta == spec.delta);
  CHECK(back.v1 == spec.v1);
  CHECK(back.v2 == spec.v2);
  CHECK(verify_lattice(back, 4).pass);
  CHECK(io::emit_lattice_spec(back) == bytes);
}
