#include "geo3ap/lattice.hpp"

#include <algorithm>

namespace geo3ap {

namespace {

Point pt(const Rational& x, const Rational& y) {
  Point p(2);
  p(0) = x;
  p(1) = y;
  return p;
}

struct HalfPlane {
  Rational a, b, c;  // a x + b y <= c
};

// constraints of the ball of radius r centered at `center`
void ball_constraints(const PolyhedralNorm& norm, const Point& center, const Rational& r,
                      std::vector<HalfPlane>& out) {
  for (int i = 0; i < norm.facet_count(); ++i) {
    const Rational a = norm.facets()(i, 0), b = norm.facets()(i, 1);
    const Rational dot_c = a * center(0) + b * center(1);
    out.push_back({a, b, r + dot_c});
    out.push_back({-a, -b, r - dot_c});
  }
}

bool satisfies_all(const std::vector<HalfPlane>& hs, const Point& p) {
  for (const auto& h : hs)
    if (h.a * p(0) + h.b * p(1) > h.c) return false;
  return true;
}

// vertices of the (bounded, nonempty) intersection, in counter-clockwise order
std::vector<Point> polygon_vertices(const std::vector<HalfPlane>& hs) {
  std::vector<Point> verts;
  const int m = static_cast<int>(hs.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const Rational det = hs[i].a * hs[j].b - hs[j].a * hs[i].b;
      if (det == 0) continue;
      const Rational x = (hs[i].c * hs[j].b - hs[j].c * hs[i].b) / det;
      const Rational y = (hs[i].a * hs[j].c - hs[j].a * hs[i].c) / det;
      Point v = pt(x, y);
      if (!satisfies_all(hs, v)) continue;
      bool dup = false;
      for (const auto& w : verts)
        if (w(0) == v(0) && w(1) == v(1)) {
          dup = true;
          break;
        }
      if (!dup) verts.push_back(std::move(v));
    }
  if (verts.size() < 3) throw InternalError("ball intersection degenerated");
  Point o = pt(0, 0);
  for (const auto& v : verts) o += v;
  o /= Rational(static_cast<long>(verts.size()));
  auto half = [&](const Point& p) {
    const Rational dy = p(1) - o(1);
    if (dy > 0) return 0;
    if (dy == 0 && p(0) - o(0) > 0) return 0;
    return 1;
  };
  std::sort(verts.begin(), verts.end(), [&](const Point& p, const Point& q) {
    const int hp = half(p), hq = half(q);
    if (hp != hq) return hp < hq;
    const Rational cross =
        (p(0) - o(0)) * (q(1) - o(1)) - (p(1) - o(1)) * (q(0) - o(0));
    return cross > 0;
  });
  return verts;
}

struct Interval {
  Rational lo, hi;
  bool empty = true;
};

// {x in [lo0, hi0] : d(anchor, (x, y)) <= r}, exact; the distance restricted
// to a horizontal line is max_i |a_i x + c_i|, so the sublevel set is an
// interval cut out by 2k linear constraints.
Interval horizontal_sublevel(const PolyhedralNorm& norm, const Point& anchor, const Rational& y,
                             const Rational& r, const Rational& lo0, const Rational& hi0) {
  Interval iv{lo0, hi0, false};
  for (int i = 0; i < norm.facet_count() && !iv.empty; ++i) {
    const Rational a = norm.facets()(i, 0);
    const Rational c = norm.facets()(i, 1) * (y - anchor(1)) - norm.facets()(i, 0) * anchor(0);
    // -r <= a x + c <= r
    if (a == 0) {
      if (c > r || c < -r) iv.empty = true;
      continue;
    }
    Rational lo = (-r - c) / a, hi = (r - c) / a;
    if (a < 0) std::swap(lo, hi);
    if (lo > iv.lo) iv.lo = lo;
    if (hi < iv.hi) iv.hi = hi;
    if (iv.lo > iv.hi) iv.empty = true;
  }
  return iv;
}

}  // namespace

Point find_p4(const PolyhedralNorm& norm, const Integer& alpha) {
  if (norm.dimension() != 2) throw DomainError("lattice construction requires a 2-D norm");
  if (alpha < 3) throw DomainError("lattice construction requires alpha >= 3");
  const Rational a(alpha);
  const Rational r = Rational(4) * a / 3;
  const Point p0 = pt(0, 0), p1 = pt(a, 0), p2 = pt(2 * a, 0), p3 = pt(3 * a, 0);

  std::vector<HalfPlane> hs;
  ball_constraints(norm, p1, r, hs);
  ball_constraints(norm, p2, r, hs);
  const std::vector<Point> poly = polygon_vertices(hs);

  auto qualified = [&](const Point& v) {
    return poly_distance(norm, p1, v) == r && poly_distance(norm, p2, v) == r;
  };
  std::vector<Point> upper;
  for (const auto& v : poly)
    if (v(1) > 0 && qualified(v)) upper.push_back(v);
  if (upper.empty()) throw InternalError("no upper intersection of the two ball boundaries");

  Point candidate = upper.front();
  if (upper.size() > 1) {
    // the intersection is a horizontal segment; pick an exact point of it that
    // is strictly farther than r from both p0 and p3
    const Rational y = upper.front()(1);
    Rational xl = upper.front()(0), xr = xl;
    for (const auto& v : upper) {
      if (v(1) != y) throw InternalError("boundary intersection is not horizontal");
      xl = std::min(xl, v(0));
      xr = std::max(xr, v(0));
    }
    // certify that the whole top edge stays on both boundaries
    if (!qualified(pt((xl + xr) / 2, y)))
      throw InternalError("top edge leaves the ball boundaries");
    const Interval s0 = horizontal_sublevel(norm, p0, y, r, xl, xr);
    const Interval s3 = horizontal_sublevel(norm, p3, y, r, xl, xr);
    std::vector<Rational> cuts = {xl, xr};
    if (!s0.empty) {
      cuts.push_back(s0.lo);
      cuts.push_back(s0.hi);
    }
    if (!s3.empty) {
      cuts.push_back(s3.lo);
      cuts.push_back(s3.hi);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rational> cands = cuts;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) cands.push_back((cuts[i] + cuts[i + 1]) / 2);
    std::sort(cands.begin(), cands.end());
    bool found = false;
    for (const Rational& x : cands) {
      if (x < xl || x > xr) continue;
      const Point c = pt(x, y);
      if (poly_distance(norm, p0, c) > r && poly_distance(norm, p3, c) > r) {
        candidate = c;
        found = true;
        break;
      }
    }
    if (!found) throw InternalError("no admissible point on the boundary segment");
  }

  auto feasible = [&](const Point& v) {
    if (v(1) <= 0) return false;
    const Rational d1 = poly_distance(norm, p1, v), d2 = poly_distance(norm, p2, v);
    return a < d1 && a < d2 && d1 <= r && d2 <= r && poly_distance(norm, p0, v) > r &&
           poly_distance(norm, p3, v) > r;
  };
  if (feasible(candidate)) return candidate;

  // downward dyadic perturbation inside the open feasible region
  Rational step = candidate(1);
  for (int depth = 1; depth <= 64; ++depth) {
    step /= 2;
    const Point moved = pt(candidate(0), candidate(1) - step);
    if (feasible(moved)) return moved;
  }
  throw InternalError("dyadic search failed to find an admissible point");
}

LatticeSpec choose_alpha(const PolyhedralNorm& norm_in) {
  auto [norm, scale] = rescale_to_unit_e1(norm_in);
  const Integer alpha0 = 3;
  const Point base_p4 = find_p4(norm, alpha0);
  const Rational a0(alpha0);

  const Rational d0 = poly_distance(norm, pt(0, 0), base_p4);
  const Rational d3 = poly_distance(norm, pt(3 * a0, 0), base_p4);
  const Rational base_d14 = poly_distance(norm, pt(a0, 0), base_p4);
  const Rational base_d24 = poly_distance(norm, pt(2 * a0, 0), base_p4);
  const Rational slack_b = std::min({d0, d3, Rational(2 * a0)}) - std::max(base_d14, base_d24);
  const Rational slack_c = std::min(base_d14, base_d24) - a0;
  if (slack_b <= 0 || slack_c <= 0) throw InternalError("base construction has no slack");

  const Integer denom_lcm = lcm_integer(base_p4(0).get_den(), base_p4(1).get_den());
  const Rational big = std::max(1 / (Rational(denom_lcm) * slack_b), 1 / (Rational(denom_lcm) * slack_c));
  Integer factor = ceil_to_integer(big);
  if (factor < 1) factor = 1;
  const Integer m = denom_lcm * factor;

  LatticeSpec spec{std::move(norm), scale, alpha0 * m, {}, Point(), Point(), Rational(0)};
  const Rational a(spec.alpha);
  spec.points[0] = pt(0, 0);
  spec.points[1] = pt(a, 0);
  spec.points[2] = pt(2 * a, 0);
  spec.points[3] = pt(3 * a, 0);
  spec.points[4] = pt(base_p4(0) * Rational(m), base_p4(1) * Rational(m));
  if (spec.points[4](0).get_den() != 1 || spec.points[4](1).get_den() != 1)
    throw InternalError("p4 did not become an integer point");

  // ordering: alpha = d(p1,p2) < d(p1,p4) <= d(p2,p4), swapping p1/p2 if needed
  if (poly_distance(spec.norm, spec.points[1], spec.points[4]) >
      poly_distance(spec.norm, spec.points[2], spec.points[4]))
    std::swap(spec.points[1], spec.points[2]);

  spec.v1 = spec.points[2] - spec.points[1];
  spec.v2 = spec.points[4] - spec.points[1];
  const Rational d12 = poly_distance(spec.norm, spec.points[1], spec.points[2]);
  const Rational d14 = poly_distance(spec.norm, spec.points[1], spec.points[4]);
  const Rational d24 = poly_distance(spec.norm, spec.points[2], spec.points[4]);
  spec.delta = d12 + d14 + d24;

  // exact re-verification of every invariant of the construction
  const Rational r = Rational(4) * a / 3;
  const Rational dd0 = poly_distance(spec.norm, spec.points[0], spec.points[4]);
  const Rational dd3 = poly_distance(spec.norm, spec.points[3], spec.points[4]);
  const Rational two_a = Rational(2) * a;
  const bool ok = spec.alpha >= 3 && d12 == a && a < d14 && d14 <= d24 && d24 <= r &&
                  r < dd0 && r < dd3 && d24 + 1 <= std::min({dd0, dd3, two_a}) &&
                  a + 1 <= d24 && Rational(3) * a < spec.delta &&
                  spec.delta <= Rational(11) * a / 3;
  if (!ok) throw InternalError("lattice invariants failed after scaling");
  return spec;
}

int lattice_point_color(long a, long b) {
  const long m = (a + 2 * b) % 3;
  return static_cast<int>(m < 0 ? m + 3 : m);
}

bool fundamental_triangle_test(const std::array<std::pair<long, long>, 3>& tri) {
  auto sorted = tri;
  std::sort(sorted.begin(), sorted.end());
  if (sorted[0] == sorted[1] || sorted[1] == sorted[2]) return false;
  const long a = sorted[0].first, b = sorted[0].second;
  auto is = [&](long a1, long b1, long a2, long b2) {
    return sorted[1] == std::pair{a + a1, b + b1} && sorted[2] == std::pair{a + a2, b + b2};
  };
  // up: {(0,0),(0,1),(1,0)}; down: {(0,0),(1,-1),(1,0)} after lexicographic sort
  return is(0, 1, 1, 0) || is(1, -1, 1, 0);
}

LatticeReport verify_lattice(const LatticeSpec& spec, int window) {
  if (window < 3) throw DomainError("verification window must be at least 3");
  const int W = window;
  LatticeReport rep;
  std::vector<Point> pos(static_cast<std::size_t>(W) * W, Point(2));
  for (int a = 0; a < W; ++a)
    for (int b = 0; b < W; ++b)
      pos[static_cast<std::size_t>(a) * W + b] =
          Rational(a) * spec.v1 + Rational(b) * spec.v2;

  const Rational len_v1 = poly_distance(spec.norm, spec.points[1], spec.points[2]);
  const Rational len_v2 = poly_distance(spec.norm, spec.points[1], spec.points[4]);
  const Rational len_v12 = poly_distance(spec.norm, spec.points[2], spec.points[4]);

  const int N = W * W;
  Mat<Rational> dist(N, N);
  const Point origin = pt(0, 0);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) dist(i, j) = poly_distance(spec.norm, pos[i], pos[j]);
  auto d = [&](int i, int j) -> const Rational& { return i < j ? dist(i, j) : dist(j, i); };
  auto coords = [&](int i) { return std::pair<long, long>{i / W, i % W}; };

  for (int i = 0; i < N && rep.message.empty(); ++i)
    for (int j = i + 1; j < N; ++j) {
      ++rep.pairs_checked;
      const auto [ai, bi] = coords(i);
      const auto [aj, bj] = coords(j);
      const long da = aj - ai, db = bj - bi;
      bool ok;
      if (da == 1 && db == 0)
        ok = d(i, j) == len_v1;
      else if (da == 0 && db == 1)
        ok = d(i, j) == len_v2;
      else if (da == 1 && db == -1)
        ok = d(i, j) == len_v12;
      else
        ok = d(i, j) >= len_v12 + 1;
      if (!ok) {
        rep.bad_pair = {{coords(i), coords(j)}};
        rep.message = "pair violates the separation bound";
        break;
      }
    }

  if (rep.message.empty()) {
    for (int i = 0; i < N && rep.message.empty(); ++i)
      for (int j = i + 1; j < N && rep.message.empty(); ++j)
        for (int l = j + 1; l < N; ++l) {
          ++rep.triples_checked;
          const Rational per = d(i, j) + d(j, l) + d(i, l);
          const bool fundamental = fundamental_triangle_test({coords(i), coords(j), coords(l)});
          const bool ok = fundamental ? per == spec.delta : per >= spec.delta + 1;
          if (!ok) {
            rep.bad_triple = {{coords(i), coords(j), coords(l)}};
            rep.message = fundamental ? "fundamental triangle with wrong perimeter"
                                      : "non-fundamental triangle cheaper than delta + 1";
            break;
          }
        }
  }

  rep.pass = rep.message.empty();
  if (rep.pass) rep.message = "all pairs and triples verified";
  return rep;
}

Integer min3ap_threshold(const LatticeSpec& spec, const Integer& n) {
  return ceil_to_integer(Rational(n) * spec.delta);
}

}  // namespace geo3ap
