#include "geo3ap/oracle.hpp"

namespace geo3ap {

namespace {

template <class Scalar, class DistFn>
Mat<Scalar> pair_table(const std::vector<Point>& a, const std::vector<Point>& b, DistFn&& d) {
  Mat<Scalar> t(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) t(i, j) = d(a[i], b[j]);
  return t;
}

}  // namespace

Solution brute_force_3ap(const Instance3AP& inst, Sense sense, const OracleLimits& limits) {
  inst.validate();
  Solution sol;
  if (norm_has_exact_distances(inst.norm)) {
    auto d = [&](const Point& p, const Point& q) { return exact_distance(inst.norm, p, q); };
    auto res = brute_force_3ap_tables<Rational>(pair_table<Rational>(inst.X, inst.Y, d),
                                                pair_table<Rational>(inst.Y, inst.Z, d),
                                                pair_table<Rational>(inst.Z, inst.X, d), sense, limits);
    sol.triples = std::move(res.triples);
    sol.value = Value::from_exact(res.value);
  } else {
    auto d = [&](const Point& p, const Point& q) { return approx_distance(inst.norm, p, q); };
    auto res = brute_force_3ap_tables<double>(pair_table<double>(inst.X, inst.Y, d),
                                              pair_table<double>(inst.Y, inst.Z, d),
                                              pair_table<double>(inst.Z, inst.X, d), sense, limits);
    sol.triples = std::move(res.triples);
    sol.value = Value::from_approx(res.value);
  }
  return sol;
}

Solution brute_force_3dm(const Instance3DM& inst, Sense sense, const OracleLimits& limits) {
  inst.validate();
  Solution sol;
  if (norm_has_exact_distances(inst.norm)) {
    auto d = [&](const Point& p, const Point& q) { return exact_distance(inst.norm, p, q); };
    auto res = brute_force_3dm_table<Rational>(pair_table<Rational>(inst.U, inst.U, d), sense, limits);
    sol.triples = std::move(res.triples);
    sol.value = Value::from_exact(res.value);
  } else {
    auto d = [&](const Point& p, const Point& q) { return approx_distance(inst.norm, p, q); };
    auto res = brute_force_3dm_table<double>(pair_table<double>(inst.U, inst.U, d), sense, limits);
    sol.triples = std::move(res.triples);
    sol.value = Value::from_approx(res.value);
  }
  return sol;
}

Rational cover_value_exact(const Instance3AP& inst, const std::vector<std::array<int, 3>>& triples) {
  Rational total(0);
  for (const auto& t : triples)
    total += perimeter_exact(inst.norm, inst.X[t[0]], inst.Y[t[1]], inst.Z[t[2]]);
  return total;
}

Rational cover_value_exact(const Instance3DM& inst, const std::vector<std::array<int, 3>>& triples) {
  Rational total(0);
  for (const auto& t : triples)
    total += perimeter_exact(inst.norm, inst.U[t[0]], inst.U[t[1]], inst.U[t[2]]);
  return total;
}

double cover_value_approx(const Instance3AP& inst, const std::vector<std::array<int, 3>>& triples) {
  double total = 0.0;
  for (const auto& t : triples)
    total += perimeter(inst.norm, inst.X[t[0]], inst.Y[t[1]], inst.Z[t[2]]);
  return total;
}

}  // namespace geo3ap
