#include "geo3ap/generators.hpp"

#include "geo3ap/norms.hpp"

namespace geo3ap {

Point random_point(Rng& rng, const PointGenOptions& opts) {
  Point p(opts.dim);
  for (int i = 0; i < opts.dim; ++i) p(i) = rng.rational(opts.coord_range, opts.den_pow2);
  return p;
}

Instance3AP random_3ap(Rng& rng, int n, Norm norm, const PointGenOptions& opts) {
  Instance3AP inst;
  inst.norm = std::move(norm);
  for (int i = 0; i < n; ++i) {
    inst.X.push_back(random_point(rng, opts));
    inst.Y.push_back(random_point(rng, opts));
    inst.Z.push_back(random_point(rng, opts));
  }
  inst.validate();
  return inst;
}

Instance3DM random_3dm(Rng& rng, int triples, Norm norm, const PointGenOptions& opts) {
  Instance3DM inst;
  inst.norm = std::move(norm);
  for (int i = 0; i < 3 * triples; ++i) inst.U.push_back(random_point(rng, opts));
  inst.validate();
  return inst;
}

PolyhedralNorm random_polyhedral_2d(Rng& rng, int k) {
  for (;;) {
    RatMat h(k, 2);
    for (int i = 0; i < k; ++i) {
      h(i, 0) = rng.rational(4, 2);
      h(i, 1) = rng.rational(4, 2);
    }
    bool zero_row = false;
    for (int i = 0; i < k; ++i)
      if (h(i, 0) == 0 && h(i, 1) == 0) zero_row = true;
    if (zero_row) continue;
    RatMat copy = h;
    if (exact_rank(std::move(copy)) != 2) continue;
    return PolyhedralNorm(std::move(h));
  }
}

PitGraph random_tripartite_deg3to6(Rng& rng, int q, bool plant_partition) {
  if (q < 3) throw DomainError("needs q >= 3 to reach minimum degree 3");
  for (;;) {
    PitGraph g;
    g.q = q;
    if (plant_partition)
      for (int i = 0; i < q; ++i) {
        g.add_edge(i, q + i);
        g.add_edge(q + i, 2 * q + i);
        g.add_edge(i, 2 * q + i);
      }
    auto deg = [&](int v) {
      int d = 0;
      for (const auto& [a, b] : g.edges) d += (a == v) + (b == v);
      return d;
    };
    int stall = 0;
    while (stall < 1000) {
      int min_v = -1, min_d = 7;
      for (int v = 0; v < g.vertex_count(); ++v) {
        const int d = deg(v);
        if (d < min_d) {
          min_d = d;
          min_v = v;
        }
      }
      if (min_d >= 3) break;
      // attach the lowest-degree vertex to a random vertex of another part
      const int part = g.part_of(min_v);
      const int other_part = (part + 1 + static_cast<int>(rng.below(2))) % 3;
      const int w = other_part * q + static_cast<int>(rng.below(q));
      if (g.has_edge(min_v, w) || deg(w) >= 6) {
        ++stall;
        continue;
      }
      g.add_edge(min_v, w);
    }
    if (stall >= 1000) continue;  // re-roll pathological graphs
    bool ok = true;
    for (int v = 0; v < g.vertex_count(); ++v) {
      const int d = deg(v);
      if (d < 3 || d > 6) ok = false;
    }
    if (ok) return g;
  }
}

}  // namespace geo3ap
