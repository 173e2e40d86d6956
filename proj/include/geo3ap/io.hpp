#pragma once

#include "geo3ap/hardness.hpp"
#include "geo3ap/lattice.hpp"
#include "geo3ap/tunneling.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace geo3ap::io {

using Json = nlohmann::ordered_json;

// Instance files: {"format": "geo3ap-instance/1", "norm": {...},
// "X"/"Y"/"Z" or "U": [[rational strings]], "metadata": {...}?}.
// Rationals are strings ("3", "-4/5") or JSON integers; floating-point numbers
// are rejected so exact values never pass through a double.
struct LoadedInstance {
  std::variant<Instance3AP, Instance3DM> problem;
  Json metadata;  // null when absent; preserved on round trips

  bool is_3dm() const { return std::holds_alternative<Instance3DM>(problem); }
};

LoadedInstance parse_instance(const std::string& bytes);
std::string emit_instance(const LoadedInstance& li);

Norm parse_norm(const Json& j, const std::string& path);
Json norm_to_json(const Norm& norm);
Json point_to_json(const Point& p);
Point parse_point(const Json& j, const std::string& path);

struct ResultData {
  std::string algorithm;  // "tunneling-exact" | "ptas" | "brute-force"
  std::string problem;    // "3ap" | "3dm"
  std::string sense;      // "max" | "min"
  Value value;
  std::vector<std::array<int, 3>> triples;
  std::optional<std::string> winning_outline;
  std::optional<std::uint64_t> outlines_evaluated;
  std::optional<bool> dedup;

  struct Guarantee {
    Rational eps;
    int k = 0;
    Rational contraction;
    Rational polygonal_value;
    double euclidean_value = 0.0;
  };
  std::optional<Guarantee> guarantee;

  struct Attainment {
    int threshold_long_pairs = 0;
    int long_pairs = 0;
    bool attained = false;
  };
  std::optional<Attainment> attainment;
};

// Deterministic bytes: fixed key order, doubles rendered with %.17g. Wall time
// deliberately stays out of the file (it goes to the CLI log) so reruns are
// byte-identical.
std::string emit_result(const ResultData& r);

// Graphs: {"q": 3, "edges": [["1:0", "2:1"], ...]} with vertices named
// "part:index", part in {1,2,3}, index 0-based.
PitGraph parse_graph(const std::string& bytes);
std::string emit_graph(const PitGraph& g);

std::string emit_lattice_spec(const LatticeSpec& spec);
LatticeSpec parse_lattice_spec(const std::string& bytes);
std::string emit_lattice_report(const LatticeReport& rep);
std::string emit_embedding_report(const EmbeddingReport& rep);

// hardness metadata block attached by the generators
Json hardness_metadata(const HardnessInstance& h, const std::string& generator);

}  // namespace geo3ap::io
