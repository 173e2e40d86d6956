#pragma once

#include "geo3ap/hardness.hpp"
#include "geo3ap/instances.hpp"
#include "geo3ap/rng.hpp"

namespace geo3ap {

struct PointGenOptions {
  int dim = 2;
  long coord_range = 20;  // numerators in [-range, range]
  int den_pow2 = 3;       // denominators up to 2^den_pow2
};

Point random_point(Rng& rng, const PointGenOptions& opts);
Instance3AP random_3ap(Rng& rng, int n, Norm norm, const PointGenOptions& opts = {});
Instance3DM random_3dm(Rng& rng, int triples, Norm norm, const PointGenOptions& opts = {});

// k facet vectors with small rational entries, rejected until they span the
// plane and no row is zero.
PolyhedralNorm random_polyhedral_2d(Rng& rng, int k);

// Random tripartite graph with every degree in {3..6}: grows by inserting
// cross-part edges between vertices of degree < 6 until the minimum degree
// reaches 3. With plant_partition, the graph starts from the q triangles
// (i, q+i, 2q+i), so a triangle partition is guaranteed to exist.
PitGraph random_tripartite_deg3to6(Rng& rng, int q, bool plant_partition = false);

}  // namespace geo3ap
