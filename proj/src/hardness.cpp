#include "geo3ap/hardness.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace geo3ap {

void PitGraph::add_edge(int u, int v) {
  if (u == v || u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count())
    throw DomainError("edge endpoints out of range");
  if (part_of(u) == part_of(v)) throw DomainError("edge inside a part; graph must be tripartite");
  if (u > v) std::swap(u, v);
  edges.insert({u, v});
}

std::vector<int> PitGraph::degrees() const {
  std::vector<int> d(vertex_count(), 0);
  for (const auto& [u, v] : edges) {
    ++d[u];
    ++d[v];
  }
  return d;
}

bool PitGraph::is_regular(int want) const {
  for (int d : degrees())
    if (d != want) return false;
  return true;
}

void PitGraph::validate() const {
  if (q < 1) throw DomainError("graph needs q >= 1");
  for (const auto& [u, v] : edges) {
    if (u < 0 || v >= vertex_count() || u >= v) throw DomainError("edge endpoints out of range");
    if (part_of(u) == part_of(v)) throw DomainError("edge inside a part; graph must be tripartite");
  }
}

PitGraph make_k333() {
  PitGraph g;
  g.q = 3;
  for (int u = 0; u < 9; ++u)
    for (int v = u + 1; v < 9; ++v)
      if (u / 3 != v / 3) g.edges.insert({u, v});
  return g;
}

PitGraph double_once(const PitGraph& g) {
  g.validate();
  const int q = g.q, q2 = 2 * q;
  const auto deg = g.degrees();
  PitGraph out;
  out.q = q2;
  // original vertex (part i, index j) -> part i, index j;
  // its copy -> part (i + 1) mod 3, index q + j
  auto orig = [&](int v) { return (v / q) * q2 + (v % q); };
  auto copy = [&](int v) { return (((v / q) + 1) % 3) * q2 + q + (v % q); };
  for (const auto& [u, v] : g.edges) {
    out.add_edge(orig(u), orig(v));
    out.add_edge(copy(u), copy(v));
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (deg[v] < 6) out.add_edge(orig(v), copy(v));
  return out;
}

PitGraph regularize_to_6(const PitGraph& g) {
  g.validate();
  for (int d : g.degrees())
    if (d < 3 || d > 6) throw DomainError("regularization requires all degrees in {3..6}");
  PitGraph cur = g;
  for (int round = 0; round < 3 && !cur.is_regular(6); ++round) cur = double_once(cur);
  if (!cur.is_regular(6)) throw InternalError("graph not 6-regular after three doubling rounds");
  return cur;
}

namespace {

struct PartitionSearch {
  const PitGraph* g;
  std::vector<std::vector<int>> adj2, adj3;  // part-1 vertex -> neighbors in parts 2, 3
  std::vector<char> used;
  std::vector<std::array<int, 3>> acc;

  bool run(int idx) {
    const int q = g->q;
    if (idx == q) return true;
    const int v1 = idx;  // part-1 vertices are 0..q-1
    for (int v2 : adj2[idx]) {
      if (used[v2]) continue;
      for (int v3 : adj3[idx]) {
        if (used[v3] || !g->has_edge(v2, v3)) continue;
        used[v2] = used[v3] = 1;
        acc.push_back({v1, v2, v3});
        if (run(idx + 1)) return true;
        acc.pop_back();
        used[v2] = used[v3] = 0;
      }
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<std::array<int, 3>>> find_triangle_partition(const PitGraph& g,
                                                                       int max_vertices) {
  g.validate();
  if (g.vertex_count() > max_vertices) throw DomainError("instance too large for oracle");
  PartitionSearch s;
  s.g = &g;
  s.adj2.resize(g.q);
  s.adj3.resize(g.q);
  for (const auto& [u, v] : g.edges) {
    if (g.part_of(u) == 0 && g.part_of(v) == 1) s.adj2[u].push_back(v);
    if (g.part_of(u) == 0 && g.part_of(v) == 2) s.adj3[u].push_back(v);
  }
  s.used.assign(g.vertex_count(), 0);
  if (!s.run(0)) return std::nullopt;
  return s.acc;
}

namespace {

std::vector<Point> embed_points(int count, int dim) {
  std::vector<Point> pts(count, Point::Zero(dim));
  return pts;
}

Instance3AP split_into_instance(std::vector<Point> pts, int q, Norm norm) {
  Instance3AP inst;
  inst.norm = std::move(norm);
  inst.X.assign(pts.begin(), pts.begin() + q);
  inst.Y.assign(pts.begin() + q, pts.begin() + 2 * q);
  inst.Z.assign(pts.begin() + 2 * q, pts.end());
  return inst;
}

}  // namespace

HardnessInstance pit_to_lp_instance(const PitGraph& g, const Rational& p) {
  g.validate();
  if (p < 1) throw DomainError("Lp embedding requires p >= 1");
  if (!g.is_regular(6)) throw DomainError("embedding requires a 6-regular graph");
  const int n = g.vertex_count(), q = g.q;
  const int dim = n * (n - 1) / 2;
  auto pair_index = [&](int u, int w) {
    if (u > w) std::swap(u, w);
    return u * n - u * (u + 1) / 2 + (w - u - 1);
  };
  std::vector<Point> pts = embed_points(n, dim);
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w) {
      if (w == v) continue;
      if (!g.has_edge(v, w)) pts[v](pair_index(v, w)) = 1;
    }
  // every point must carry exactly 3q - 7 ones
  for (int v = 0; v < n; ++v) {
    long ones = 0;
    for (int c = 0; c < dim; ++c)
      if (pts[v](c) != 0) ++ones;
    if (ones != 3 * static_cast<long>(q) - 7)
      throw InternalError("embedding degree bookkeeping failed");
  }
  HardnessInstance h{split_into_instance(std::move(pts), q, Norm{LpNorm::make(p)}),
                     q,
                     p,
                     Rational(6 * q - 14),
                     Rational(6 * q - 16),
                     3 * q,
                     std::nullopt};
  if (p == 1) h.threshold_exact = Rational(3 * q) * Rational(6 * q - 14);
  return h;
}

HardnessInstance pit_to_linf_instance(const PitGraph& g) {
  g.validate();
  // the construction would work for irregular graphs too, but is rejected for
  // uniformity with the Lp embedding
  if (!g.is_regular(6)) throw DomainError("embedding requires a 6-regular graph");
  const int n = g.vertex_count(), q = g.q;
  const int dim = static_cast<int>(g.edges.size());
  std::vector<Point> pts = embed_points(n, dim);
  int e = 0;
  for (const auto& [u, v] : g.edges) {
    pts[u](e) = 1;  // lower vertex id gets +1
    pts[v](e) = -1;
    ++e;
  }
  HardnessInstance h{split_into_instance(std::move(pts), q, Norm{LpNorm::inf()}),
                     q,
                     std::nullopt,
                     Rational(2),
                     Rational(1),
                     3 * q,
                     Rational(6 * q)};
  return h;
}

EmbeddingReport verify_embedding(const HardnessInstance& h, const PitGraph& g,
                                 int max_partition_vertices) {
  g.validate();
  EmbeddingReport rep;
  const int n = g.vertex_count();
  std::vector<const Point*> pts;
  for (const auto& p : h.instance.X) pts.push_back(&p);
  for (const auto& p : h.instance.Y) pts.push_back(&p);
  for (const auto& p : h.instance.Z) pts.push_back(&p);
  if (static_cast<int>(pts.size()) != n) {
    rep.message = "instance and graph sizes differ";
    return rep;
  }
  const LpNorm* lp = std::get_if<LpNorm>(&h.instance.norm);
  if (!lp) {
    rep.message = "embedding instances carry an Lp norm";
    return rep;
  }
  rep.distances_ok = true;
  for (int u = 0; u < n && rep.distances_ok; ++u)
    for (int v = u + 1; v < n; ++v) {
      Rational got;
      if (lp->infinite) {
        got = *lp_distance(*lp, *pts[u], *pts[v]).exact;
      } else if (auto d = lp_distance(*lp, *pts[u], *pts[v]); d.power_sum) {
        got = *d.power_sum;
      } else {
        // embedding coordinates are 0/1, so |d_i|^p is |d_i| for every p and
        // the p-th power distance is the number of differing coordinates
        long count = 0;
        for (Eigen::Index c = 0; c < pts[u]->size(); ++c)
          if ((*pts[u])(c) != (*pts[v])(c)) ++count;
        got = Rational(count);
      }
      const Rational want = g.has_edge(u, v) ? h.long_power : h.short_power;
      if (got != want) {
        rep.distances_ok = false;
        rep.bad_pair = {u, v};
        rep.message = "pair (" + std::to_string(u) + ", " + std::to_string(v) +
                      ") has distance power " + format_rational(got) + ", expected " +
                      format_rational(want);
        break;
      }
    }
  rep.partition_exists = find_triangle_partition(g, max_partition_vertices).has_value();
  // A cover attains the threshold iff all 3q pairs inside its triples are
  // edges, i.e. iff the triples are triangles.
  rep.attained = rep.partition_exists;
  if (rep.distances_ok && rep.message.empty())
    rep.message = rep.attained ? "distances match; threshold attained"
                               : "distances match; threshold not attained";
  return rep;
}

int max_cover_edge_pairs(const PitGraph& g, int max_q) {
  g.validate();
  if (g.q > max_q) throw DomainError("instance too large for oracle");
  const int q = g.q;
  std::vector<int> sigma(q), tau(q);
  std::iota(sigma.begin(), sigma.end(), 0);
  int best = -1;
  do {
    std::iota(tau.begin(), tau.end(), 0);
    do {
      int pairs = 0;
      for (int i = 0; i < q; ++i) {
        const int a = i, b = q + sigma[i], c = 2 * q + tau[i];
        pairs += g.has_edge(a, b) + g.has_edge(b, c) + g.has_edge(a, c);
      }
      best = std::max(best, pairs);
    } while (std::next_permutation(tau.begin(), tau.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best;
}

namespace {

PitGraph circulant_graph(int q, const std::array<std::vector<int>, 3>& shifts) {
  PitGraph g;
  g.q = q;
  for (int i = 0; i < q; ++i) {
    for (int s : shifts[0]) g.add_edge(i, q + (i + s) % q);          // V1 - V2
    for (int s : shifts[1]) g.add_edge(q + i, 2 * q + (i + s) % q);  // V2 - V3
    for (int s : shifts[2]) g.add_edge(i, 2 * q + (i + s) % q);      // V1 - V3
  }
  return g;
}

bool circulant_triangle_free(int q, const std::array<std::vector<int>, 3>& shifts) {
  // triangle u_i, v_{i+s}, w_{i+s+t} exists iff s in S12, t in S23, s+t in S13
  for (int s : shifts[0])
    for (int t : shifts[1])
      for (int r : shifts[2])
        if ((s + t) % q == r) return false;
  return true;
}

void enumerate_3subsets(int q, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> s(3);
  for (s[0] = 0; s[0] < q; ++s[0])
    for (s[1] = s[0] + 1; s[1] < q; ++s[1])
      for (s[2] = s[1] + 1; s[2] < q; ++s[2]) fn(s);
}

}  // namespace

std::optional<CirculantWitness> find_circulant_witness(int max_q) {
  for (int q = 3; q <= max_q; ++q) {
    std::vector<std::vector<int>> subsets;
    enumerate_3subsets(q, [&](const std::vector<int>& s) { subsets.push_back(s); });
    std::optional<CirculantWitness> found;
    for (const auto& s12 : subsets) {
      if (found) break;
      for (const auto& s23 : subsets) {
        if (found) break;
        for (const auto& s13 : subsets) {
          std::array<std::vector<int>, 3> shifts = {s12, s23, s13};
          const bool tri_free = circulant_triangle_free(q, shifts);
          PitGraph g = circulant_graph(q, shifts);
          if (!tri_free && find_triangle_partition(g, 3 * q).has_value()) continue;
          CirculantWitness w;
          w.q = q;
          w.shifts = shifts;
          w.graph = std::move(g);
          w.triangle_free = tri_free;
          found = std::move(w);
          break;
        }
      }
    }
    if (found) return found;
  }
  return std::nullopt;
}

}  // namespace geo3ap
