#include "geo3ap/ptas.hpp"

#include <cmath>

namespace geo3ap {

namespace {

Rational simplest_positive(const Rational& lo, const Rational& hi) {
  // smallest-denominator rational in the open interval (lo, hi), 0 <= lo < hi
  const Integer fl = floor_to_integer(lo);
  const Rational lo_f = lo - Rational(fl);
  const Rational hi_f = hi - Rational(fl);
  if (hi_f > 1) return Rational(fl + 1);
  if (lo_f == 0) {
    // simplest in the open (0, hi_f) is 1/q for the smallest q with 1/q < hi_f
    Integer q = floor_to_integer(1 / hi_f) + 1;
    return Rational(fl) + make_rational(Integer(1), q);
  }
  return Rational(fl) + 1 / simplest_positive(1 / hi_f, 1 / lo_f);
}

Rational pow2_inv(int level) { return make_rational(Integer(1), pow_integer(Integer(2), level)); }

// h(t) = ((1-t^2)/(1+t^2), 2t/(1+t^2)); dot product of two such directions
Rational dot_quarter(const Rational& a, const Rational& b) {
  const Rational num = (1 - a * a) * (1 - b * b) + 4 * a * b;
  const Rational den = (1 + a * a) * (1 + b * b);
  return num / den;
}

// dot of h(t) with (0, 1), the first direction of the rotated copy
Rational dot_seam(const Rational& t) { return 2 * t / (1 + t * t); }

// (1 + cos gap)/2 for the gap starting at ts[i]; the last gap ends at the seam
Rational gap_cert(const std::vector<Rational>& ts, std::size_t i) {
  const Rational d = (i + 1 < ts.size()) ? dot_quarter(ts[i], ts[i + 1]) : dot_seam(ts[i]);
  return (1 + d) / 2;
}

// split gaps until each one satisfies (1 + dot)/2 >= target_sq
void refine_level(std::vector<Rational>& ts, const Rational& target_sq) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Rational> next;
    next.reserve(ts.size() * 2);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      next.push_back(ts[i]);
      if (gap_cert(ts, i) < target_sq) {
        const Rational b = (i + 1 < ts.size()) ? ts[i + 1] : Rational(1);
        const Rational third = (b - ts[i]) / 3;
        next.push_back(simplest_positive(ts[i] + third, b - third));
        changed = true;
      }
    }
    ts.swap(next);
  }
}

std::vector<Rational> quarter_parameters(const Rational& target_sq) {
  std::vector<Rational> ts = {Rational(0)};
  auto cert = [&] {
    Rational m = gap_cert(ts, 0);
    for (std::size_t i = 1; i < ts.size(); ++i) {
      Rational g = gap_cert(ts, i);
      if (g < m) m = g;
    }
    return m;
  };
  for (int level = 1; cert() < target_sq; ++level) {
    if (level > 64 || ts.size() > 100000)
      throw DomainError("eps too small for the direction builder");
    const Rational t = 1 - pow2_inv(level);
    refine_level(ts, t * t);
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const bool ok = ts[i] >= 0 && ts[i] < 1 && (i == 0 || ts[i - 1] < ts[i]);
    if (!ok) throw InternalError("direction parameters lost their ordering");
  }
  return ts;
}

}  // namespace

Rational simplest_rational_between(const Rational& lo, const Rational& hi) {
  if (lo >= hi) throw DomainError("empty interval");
  if (lo < 0) {
    if (hi > 0) return Rational(0);
    return -simplest_positive(-hi, -lo);
  }
  return simplest_positive(lo, hi);
}

ApproxScheme polygonal_norm_for_eps(const Rational& eps) {
  if (eps <= 0 || eps >= 1) throw DomainError("eps must lie strictly between 0 and 1");
  const Rational target = 1 - eps;
  const Rational target_sq = target * target;
  const std::vector<Rational> ts = quarter_parameters(target_sq);

  RatMat dirs(2 * ts.size(), 2);
  Rational min_cert(1);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Rational& t = ts[i];
    const Rational den = 1 + t * t;
    dirs(i, 0) = (1 - t * t) / den;
    dirs(i, 1) = 2 * t / den;
    // rotate by 90 degrees for the second quarter
    dirs(ts.size() + i, 0) = -dirs(i, 1);
    dirs(ts.size() + i, 1) = dirs(i, 0);
    Rational g = gap_cert(ts, i);
    if (g < min_cert) min_cert = g;
  }
  ApproxScheme scheme{eps, PolyhedralNorm(std::move(dirs)), Rational(0)};
  Rational c = sqrt_lower_bound(min_cert, 60);
  if (c < target) c = target;
  if (c * c > min_cert) throw InternalError("contraction certificate failed");
  scheme.contraction = c;
  return scheme;
}

Integer ptas_outline_count(const Rational& eps, int n) {
  const ApproxScheme scheme = polygonal_norm_for_eps(eps);
  const int k = scheme.k();
  return outline_count(8 * k * k * k, n);
}

PtasResult ptas_solve_max3ap(const Instance3AP& inst, const Rational& eps,
                             const SolveOptions& opts) {
  inst.validate();
  const auto* lp = std::get_if<LpNorm>(&inst.norm);
  if (!lp || lp->infinite || lp->p != 2 || inst.dimension() != 2)
    throw DomainError("PTAS requires a 2-D Euclidean instance");

  PtasResult out{.solution = {}, .polygonal_value = Rational(0),
                 .scheme = polygonal_norm_for_eps(eps), .winning = {}, .stats = {}};
  Instance3AP poly_inst{Norm{out.scheme.directions}, inst.X, inst.Y, inst.Z};
  SolveOptions inner = opts;
  inner.force_k = true;  // k is certified by the scheme; size gating is the caller's job
  auto res = solve_max3ap_polyhedral(poly_inst, inner);
  out.polygonal_value = *res.solution.value.exact;
  out.winning = res.winning;
  out.stats = res.stats;
  out.solution.triples = std::move(res.solution.triples);

  double v = 0.0;
  for (const auto& t : out.solution.triples)
    v += perimeter(inst.norm, inst.X[t[0]], inst.Y[t[1]], inst.Z[t[2]]);
  out.solution.value = Value::from_approx(v);
  return out;
}

}  // namespace geo3ap
