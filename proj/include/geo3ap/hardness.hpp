#pragma once

#include "geo3ap/instances.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace geo3ap {

// Tripartite graph with parts of equal size q. Vertices carry global ids
// 0..3q-1; vertex v lies in part v / q and has index v % q within it.
struct PitGraph {
  int q = 0;
  std::set<std::pair<int, int>> edges;  // u < v, parts differ

  int vertex_count() const { return 3 * q; }
  int part_of(int v) const { return v / q; }
  bool has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return edges.count({u, v}) != 0;
  }
  void add_edge(int u, int v);
  std::vector<int> degrees() const;
  bool is_regular(int d) const;
  void validate() const;  // sizes, tripartiteness
};

PitGraph make_k333();

// Doubling construction: copies the graph with parts shifted cyclically (the
// copy of part i lands in part i+1 mod 3, so the joining edges cross parts)
// and joins every vertex of degree < 6 to its copy. None of the joining edges
// lies in a triangle, so the triangle-partition answer is preserved. Repeats
// until 6-regular (at most three rounds from minimum degree 3); inputs that
// are already 6-regular are returned unchanged.
PitGraph regularize_to_6(const PitGraph& g);
PitGraph double_once(const PitGraph& g);  // a single round, for testing

// Backtracking search for a partition of the vertices into q triangles.
std::optional<std::vector<std::array<int, 3>>> find_triangle_partition(const PitGraph& g,
                                                                       int max_vertices = 30);

// Point embeddings of a 6-regular tripartite PIT instance.
struct HardnessInstance {
  Instance3AP instance;
  int q = 0;
  std::optional<Rational> p;  // exponent; empty for the Linf embedding
  Rational long_power;        // d(edge)^p      (Linf: the distance itself, 2)
  Rational short_power;       // d(non-edge)^p  (Linf: 1)
  int threshold_long_pairs = 0;  // 3q; the threshold value is 3q * ell_star
  std::optional<Rational> threshold_exact;  // populated when representable (p=1, Linf)
};

// One coordinate per 2-element vertex set {u,w}; P(v) has a 1 exactly at the
// sets {v,w} with [v,w] not an edge. Pairwise p-th-power distances are then
// 6q-14 for edges and 6q-16 for non-edges.
HardnessInstance pit_to_lp_instance(const PitGraph& g, const Rational& p);

// One coordinate per edge [u,v]; the endpoint with the lower id gets +1, the
// other -1. Linf distances: 2 for edges, 1 for distinct non-adjacent vertices.
HardnessInstance pit_to_linf_instance(const PitGraph& g);

struct EmbeddingReport {
  bool distances_ok = false;
  std::optional<std::pair<int, int>> bad_pair;  // first offending vertex pair
  bool partition_exists = false;
  bool attained = false;  // threshold attainment; equals partition_exists
  bool pass() const { return distances_ok; }
  std::string message;
};

EmbeddingReport verify_embedding(const HardnessInstance& h, const PitGraph& g,
                                 int max_partition_vertices = 30);

// Maximum number of adjacent pairs over all covers, by exhaustive search; the
// threshold is attained iff this equals 3q. Used for small instances only.
int max_cover_edge_pairs(const PitGraph& g, int max_q = 4);

// Circulant construction: edges u_i ~ v_{i+s} for s in the shift sets. Search
// in lexicographic order for the smallest q admitting a 6-regular tripartite
// graph with no triangle partition (triangle-free ones qualify a fortiori).
struct CirculantWitness {
  int q = 0;
  std::array<std::vector<int>, 3> shifts;  // S12, S23, S13
  PitGraph graph;
  bool triangle_free = false;
};
std::optional<CirculantWitness> find_circulant_witness(int max_q);

}  // namespace geo3ap
