#include "geo3ap/tunneling.hpp"

#include "geo3ap/parallel.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <type_traits>

namespace geo3ap {

TunnelSystem tunnels_from_polyhedral(const PolyhedralNorm& norm, const std::vector<Point>& elements) {
  const int s = norm.dimension();
  RatMat pts(elements.size(), s);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].size() != s) throw DomainError("dimension mismatch");
    pts.row(i) = elements[i].transpose();
  }
  TunnelSystem ts;
  ts.front = pts * norm.facets().transpose();
  ts.back = -ts.front;
  return ts;
}

Rational tunneling_distance(const TunnelSystem& ts, int a, int b) {
  ts.validate();
  if (a < 0 || b < 0 || a >= ts.element_count() || b >= ts.element_count())
    throw DomainError("unknown element");
  Rational best = ts.front(a, 0) + ts.back(b, 0);
  for (int t = 0; t < ts.tunnel_count(); ++t) {
    Rational fw = ts.front(a, t) + ts.back(b, t);
    Rational bw = ts.back(a, t) + ts.front(b, t);
    if (fw > best) best = fw;
    if (bw > best) best = bw;
  }
  return best;
}

std::vector<CycleType> enumerate_cycle_types(int k) {
  if (k < 1) throw DomainError("tunnel system needs k >= 1 tunnels");
  std::vector<CycleType> types;
  types.reserve(static_cast<std::size_t>(8) * k * k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l)
        for (int b1 = 0; b1 < 2; ++b1)
          for (int b3 = 0; b3 < 2; ++b3)
            for (int b5 = 0; b5 < 2; ++b5) types.push_back(CycleType{{i, j, l}, {b1, b3, b5}});
  return types;
}

namespace {

inline std::uint16_t incidence(int tunnel, int label) {
  return static_cast<std::uint16_t>(2 * tunnel + label);
}

inline std::uint16_t pair_id(int two_k, std::uint16_t a, std::uint16_t b) {
  if (a > b) std::swap(a, b);
  // lexicographic index of the sorted pair (a, b), a <= b, over [0, two_k)
  return static_cast<std::uint16_t>(a * two_k - a * (a - 1) / 2 + (b - a));
}

}  // namespace

CycleCatalog CycleCatalog::build(int k) {
  CycleCatalog cat;
  cat.k_ = k;
  cat.types_ = enumerate_cycle_types(k);
  const int two_k = 2 * k;
  for (std::uint16_t a = 0; a < two_k; ++a)
    for (std::uint16_t b = a; b < two_k; ++b) cat.slot_types_.push_back(SlotType{a, b});
  cat.slots_of_type_.reserve(cat.types_.size());
  for (const CycleType& t : cat.types_) {
    const auto [i, j, l] = std::array{t.tunnel[0], t.tunnel[1], t.tunnel[2]};
    const auto [b1, b3, b5] = std::array{t.label[0], t.label[1], t.label[2]};
    std::uint16_t x = pair_id(two_k, incidence(i, b1), incidence(l, 1 - b5));
    std::uint16_t y = pair_id(two_k, incidence(i, 1 - b1), incidence(j, b3));
    std::uint16_t z = pair_id(two_k, incidence(j, 1 - b3), incidence(l, b5));
    cat.slots_of_type_.push_back({x, y, z});
  }
  std::map<std::array<std::uint16_t, 3>, int> seen_3ap, seen_3dm;
  for (int id = 0; id < cat.type_count(); ++id) {
    auto key = cat.slots_of_type_[id];
    if (seen_3ap.emplace(key, id).second) cat.reps_3ap_.push_back(id);
    std::sort(key.begin(), key.end());
    if (seen_3dm.emplace(key, id).second) cat.reps_3dm_.push_back(id);
  }
  return cat;
}

std::string Outline::encode() const {
  std::string out;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(cycles[i].first);
    if (cycles[i].second > 1) {
      out += 'x';
      out += std::to_string(cycles[i].second);
    }
  }
  return out;
}

Outline Outline::from_ids(const std::uint16_t* ids, int n) {
  Outline o;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && ids[j] == ids[i]) ++j;
    o.cycles.emplace_back(ids[i], j - i);
    i = j;
  }
  return o;
}

Integer outline_count(int type_count, int n) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(type_count + n - 1),
               static_cast<unsigned long>(n));
  return r;
}

// ---------------------------------------------------------------------------
// solver internals

namespace {

constexpr int kMaxOutlineSize = 16;
constexpr std::uint64_t kDenseStoreMax = 5'000'000;

struct ScaledTables {
  std::vector<std::int64_t> front, back;  // [element * k + tunnel]
  Integer denom;
};

std::optional<ScaledTables> try_scale(const TunnelSystem& ts) {
  const int m = ts.element_count(), k = ts.tunnel_count();
  Integer d(1);
  for (int e = 0; e < m; ++e)
    for (int t = 0; t < k; ++t) {
      d = lcm_integer(d, ts.front(e, t).get_den());
      d = lcm_integer(d, ts.back(e, t).get_den());
    }
  static const Integer bound = pow_integer(Integer(2), 44);
  ScaledTables st;
  st.denom = d;
  st.front.resize(static_cast<std::size_t>(m) * k);
  st.back.resize(static_cast<std::size_t>(m) * k);
  auto convert = [&](const Rational& r, std::int64_t& out) {
    Integer v = r.get_num() * (d / r.get_den());
    if (v > bound || v < -bound) return false;
    out = to_int64(v);
    return true;
  };
  for (int e = 0; e < m; ++e)
    for (int t = 0; t < k; ++t) {
      if (!convert(ts.front(e, t), st.front[static_cast<std::size_t>(e) * k + t])) return std::nullopt;
      if (!convert(ts.back(e, t), st.back[static_cast<std::size_t>(e) * k + t])) return std::nullopt;
    }
  return st;
}

// Shortest-augmenting-path assignment on a raw row-major matrix with reusable
// workspace; only +, - and comparisons, so exact for Rational.
template <class S>
struct JVWorkspace {
  std::vector<S> u, v, minv;
  std::vector<int> row_of, way;
  std::vector<char> used, seen;
  void reset(int n) {
    u.assign(n + 1, S(0));
    v.assign(n + 1, S(0));
    minv.assign(n + 1, S(0));
    row_of.assign(n + 1, -1);
    way.assign(n + 1, 0);
    used.assign(n + 1, 0);
    seen.assign(n + 1, 0);
  }
};

template <class S>
S min_assignment_raw(const S* c, int n, JVWorkspace<S>& w) {
  w.reset(n);
  for (int r = 0; r < n; ++r) {
    int j0 = n;
    w.row_of[n] = r;
    std::fill(w.used.begin(), w.used.end(), 0);
    std::fill(w.seen.begin(), w.seen.end(), 0);
    do {
      w.used[j0] = 1;
      const int i0 = w.row_of[j0];
      int j1 = -1;
      for (int j = 0; j < n; ++j) {
        if (w.used[j]) continue;
        S cur = c[i0 * n + j] - w.u[i0] - w.v[j];
        if (!w.seen[j] || cur < w.minv[j]) {
          w.minv[j] = cur;
          w.way[j] = j0;
          w.seen[j] = 1;
        }
        if (j1 < 0 || w.minv[j] < w.minv[j1]) j1 = j;
      }
      const S delta = w.minv[j1];
      for (int j = 0; j <= n; ++j) {
        if (w.used[j]) {
          w.u[w.row_of[j]] += delta;
          w.v[j] -= delta;
        } else if (w.seen[j]) {
          w.minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (w.row_of[j0] >= 0);
    while (j0 != n) {
      const int j1 = w.way[j0];
      w.row_of[j0] = w.row_of[j1];
      j0 = j1;
    }
  }
  S total(0);
  for (int j = 0; j < n; ++j) total += c[w.row_of[j] * n + j];
  return total;
}

// Per-class cost table: cost[e * M + slot] = sum of the slot's two incidence
// values for element e.
template <class S>
struct SlotCostTable {
  std::vector<S> cost;
  int n_rows = 0;
  int M = 0;
};

template <class S, class IncVal>
SlotCostTable<S> build_cost_table(const std::vector<int>& elems, const std::vector<SlotType>& slots,
                                  IncVal&& inc_val) {
  SlotCostTable<S> t;
  t.n_rows = static_cast<int>(elems.size());
  t.M = static_cast<int>(slots.size());
  t.cost.resize(static_cast<std::size_t>(t.n_rows) * t.M);
  for (int e = 0; e < t.n_rows; ++e)
    for (int s = 0; s < t.M; ++s)
      t.cost[static_cast<std::size_t>(e) * t.M + s] =
          inc_val(elems[e], slots[s].inc_a) + inc_val(elems[e], slots[s].inc_b);
  return t;
}

// Maximum assignment value of `n_rows` elements against every size-n_rows slot
// multiset, precomputed densely and indexed by the colex rank of the sorted
// multiset.
template <class S>
struct DenseStore {
  int M = 0, n = 0;
  std::vector<std::uint64_t> binom;  // [(a) * (n + 1) + b]
  std::vector<S> vals;

  std::uint64_t rank(const std::uint16_t* sorted) const {
    std::uint64_t r = 0;
    for (int i = 0; i < n; ++i) r += binom[static_cast<std::size_t>(sorted[i] + i) * (n + 1) + (i + 1)];
    return r;
  }

  static std::optional<DenseStore> build(const SlotCostTable<S>& tab) {
    DenseStore st;
    st.M = tab.M;
    st.n = tab.n_rows;
    const Integer total = outline_count(st.M, st.n);
    if (total > Integer(static_cast<unsigned long>(kDenseStoreMax))) return std::nullopt;
    const int rows = st.M + st.n + 1;
    st.binom.assign(static_cast<std::size_t>(rows) * (st.n + 1), 0);
    for (int a = 0; a < rows; ++a) {
      st.binom[static_cast<std::size_t>(a) * (st.n + 1)] = 1;
      for (int b = 1; b <= st.n && b <= a; ++b) {
        std::uint64_t v = st.binom[static_cast<std::size_t>(a - 1) * (st.n + 1) + b - 1];
        if (b <= a - 1) v += st.binom[static_cast<std::size_t>(a - 1) * (st.n + 1) + b];
        st.binom[static_cast<std::size_t>(a) * (st.n + 1) + b] = v;
      }
    }
    st.vals.assign(static_cast<std::size_t>(total.get_ui()), S(0));
    JVWorkspace<S> ws;
    std::vector<S> neg(static_cast<std::size_t>(st.n) * st.n);
    enumerate_outlines(st.M, st.n, [&](const std::uint16_t* slots, int n) {
      for (int r = 0; r < n; ++r)
        for (int j = 0; j < n; ++j)
          neg[static_cast<std::size_t>(r) * n + j] = -tab.cost[static_cast<std::size_t>(r) * tab.M + slots[j]];
      st.vals[st.rank(slots)] = -min_assignment_raw(neg.data(), n, ws);
    });
    return st;
  }
};

template <class S>
struct DirectEval {
  const SlotCostTable<S>* tab = nullptr;
  JVWorkspace<S> ws;
  std::vector<S> neg;

  S value(const std::uint16_t* slots, int n) {
    neg.resize(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r)
      for (int j = 0; j < n; ++j)
        neg[static_cast<std::size_t>(r) * n + j] = -tab->cost[static_cast<std::size_t>(r) * tab->M + slots[j]];
    return -min_assignment_raw(neg.data(), n, ws);
  }
};

inline void insertion_sort(std::uint16_t* a, int n) {
  for (int i = 1; i < n; ++i) {
    const std::uint16_t key = a[i];
    int j = i - 1;
    while (j >= 0 && a[j] > key) {
      a[j + 1] = a[j];
      --j;
    }
    a[j + 1] = key;
  }
}

template <class S>
struct ShardBest {
  bool have = false;
  S value{};
  std::array<std::uint16_t, kMaxOutlineSize> ids{};
  std::uint64_t evaluated = 0;
};

// One solver pass over all outlines; Classes = 3 for 3AP, 1 for 3DM (where
// every cycle contributes its three slots to a single unlabeled pool).
template <class S, int Classes>
struct OutlinePass {
  int n_cycles = 0;
  int active_count = 0;
  std::array<std::vector<std::uint16_t>, 3> slot_of_active;  // per class, per active index
  std::array<const DenseStore<S>*, 3> dense{};
  std::array<DirectEval<S>, 3> direct{};
  bool use_dense = false;

  ShardBest<S> run_shard(int first) {
    ShardBest<S> best;
    std::array<std::uint16_t, kMaxOutlineSize> ids{};
    ids[0] = static_cast<std::uint16_t>(first);
    auto leaf = [&](const std::uint16_t* seq, int n) {
      std::array<std::array<std::uint16_t, 3 * kMaxOutlineSize>, Classes> slots;
      const int per_class = (Classes == 1) ? 3 * n : n;
      for (int c = 0; c < Classes; ++c) {
        auto& buf = slots[c];
        if constexpr (Classes == 1) {
          for (int i = 0; i < n; ++i) {
            buf[3 * i] = slot_of_active[0][seq[i]];
            buf[3 * i + 1] = slot_of_active[1][seq[i]];
            buf[3 * i + 2] = slot_of_active[2][seq[i]];
          }
        } else {
          for (int i = 0; i < n; ++i) buf[i] = slot_of_active[c][seq[i]];
        }
        insertion_sort(buf.data(), per_class);
      }
      S total(0);
      for (int c = 0; c < Classes; ++c) {
        total += use_dense ? dense[c]->vals[dense[c]->rank(slots[c].data())]
                           : direct[c].value(slots[c].data(), per_class);
      }
      ++best.evaluated;
      if (!best.have || best.value < total) {
        best.have = true;
        best.value = std::move(total);
        std::copy(seq, seq + n, best.ids.begin());
      }
    };
    if (n_cycles == 1) {
      leaf(ids.data(), 1);
    } else {
      detail::enumerate_outlines_rec(active_count, n_cycles, 1, first, ids.data(), leaf);
    }
    return best;
  }
};

struct EngineResult {
  Rational value;
  std::vector<std::uint16_t> winning_active;  // active indices, ascending
  std::uint64_t evaluated = 0;
};

template <class S, int Classes, class IncVal>
EngineResult run_engine(const CycleCatalog& cat, const std::vector<int>& active,
                        const std::array<const std::vector<int>*, 3>& class_elems, int n_cycles,
                        const SolveOptions& opts, IncVal&& inc_val, const Rational& value_unit) {
  OutlinePass<S, Classes> pass;
  pass.n_cycles = n_cycles;
  pass.active_count = static_cast<int>(active.size());
  for (int c = 0; c < 3; ++c) {
    pass.slot_of_active[c].resize(active.size());
    for (std::size_t i = 0; i < active.size(); ++i)
      pass.slot_of_active[c][i] = cat.slots_of(active[i])[c];
  }
  std::array<SlotCostTable<S>, 3> tabs;
  std::array<std::optional<DenseStore<S>>, 3> stores;
  pass.use_dense = true;
  for (int c = 0; c < Classes; ++c) {
    tabs[c] = build_cost_table<S>(*class_elems[c], cat.slot_types(), inc_val);
    stores[c] = DenseStore<S>::build(tabs[c]);
    if (!stores[c]) pass.use_dense = false;
  }
  for (int c = 0; c < Classes; ++c) {
    if (pass.use_dense)
      pass.dense[c] = &*stores[c];
    else
      pass.direct[c].tab = &tabs[c];
  }

  const int shard_count = pass.active_count;
  std::vector<ShardBest<S>> bests(shard_count);
  if (pass.use_dense && opts.threads > 1) {
    run_shards(shard_count, opts.threads, [&](int s) { bests[s] = pass.run_shard(s); });
  } else {
    // direct evaluators carry mutable workspaces; keep them single-threaded
    for (int s = 0; s < shard_count; ++s) bests[s] = pass.run_shard(s);
  }

  EngineResult out;
  out.value = 0;
  int best_shard = -1;
  for (int s = 0; s < shard_count; ++s) {
    out.evaluated += bests[s].evaluated;
    if (!bests[s].have) continue;
    if (best_shard < 0 || bests[best_shard].value < bests[s].value) best_shard = s;
  }
  if (best_shard < 0) throw InternalError("no outline was evaluated");
  const auto& b = bests[best_shard];
  out.winning_active.assign(b.ids.begin(), b.ids.begin() + n_cycles);
  if constexpr (std::is_same_v<S, std::int64_t>) {
    out.value = Rational(Integer(static_cast<long>(b.value))) * value_unit;
  } else {
    out.value = b.value * value_unit;
  }
  return out;
}

std::vector<int> active_ids(const CycleCatalog& cat, bool dedup, bool dm) {
  if (!dedup) {
    std::vector<int> all(cat.type_count());
    for (int i = 0; i < cat.type_count(); ++i) all[i] = i;
    return all;
  }
  return dm ? cat.reps_3dm() : cat.reps_3ap();
}

Rational slot_cost_exact(const TunnelSystem& ts, int elem, const SlotType& slot) {
  auto val = [&](std::uint16_t inc) {
    const int t = inc >> 1;
    return (inc & 1) ? ts.back(elem, t) : ts.front(elem, t);
  };
  return val(slot.inc_a) + val(slot.inc_b);
}

std::vector<int> expand_slot_instances(const Outline& o, const CycleCatalog& cat, int cls) {
  std::vector<int> slot_of_instance;
  for (const auto& [type, mult] : o.cycles) {
    if (type < 0 || type >= cat.type_count()) throw DomainError("outline refers to unknown cycle type");
    for (int m = 0; m < mult; ++m) slot_of_instance.push_back(cat.slots_of(type)[cls]);
  }
  return slot_of_instance;
}

}  // namespace

OutlineEvaluation evaluate_outline_3ap(const Outline& o, const TunnelSystem& ts,
                                       const std::vector<int>& X, const std::vector<int>& Y,
                                       const std::vector<int>& Z) {
  ts.validate();
  const int n = static_cast<int>(X.size());
  if (static_cast<int>(Y.size()) != n || static_cast<int>(Z.size()) != n || o.total() != n)
    throw DomainError("outline size does not match the instance");
  const CycleCatalog cat = CycleCatalog::build(ts.tunnel_count());
  OutlineEvaluation eval;
  eval.value = 0;
  const std::array<const std::vector<int>*, 3> classes = {&X, &Y, &Z};
  for (int c = 0; c < 3; ++c) {
    const std::vector<int> slots = expand_slot_instances(o, cat, c);
    CostMatrix<Rational> m;
    m.sense = Sense::maximize;
    m.entries.resize(n, n);
    for (int e = 0; e < n; ++e)
      for (int j = 0; j < n; ++j)
        m.entries(e, j) = slot_cost_exact(ts, (*classes[c])[e], cat.slot_types()[slots[j]]);
    auto res = hungarian(m);
    eval.value += res.value;
    eval.slot_of_elem[c] = std::move(res.permutation);
  }
  return eval;
}

OutlineEvaluation3DM evaluate_outline_3dm(const Outline& o, const TunnelSystem& ts,
                                          const std::vector<int>& U) {
  ts.validate();
  const int m_count = static_cast<int>(U.size());
  if (m_count % 3 != 0 || o.total() * 3 != m_count)
    throw DomainError("outline size does not match the instance");
  const CycleCatalog cat = CycleCatalog::build(ts.tunnel_count());
  std::vector<int> slots;
  for (const auto& [type, mult] : o.cycles) {
    if (type < 0 || type >= cat.type_count()) throw DomainError("outline refers to unknown cycle type");
    for (int m = 0; m < mult; ++m)
      for (int c = 0; c < 3; ++c) slots.push_back(cat.slots_of(type)[c]);
  }
  CostMatrix<Rational> mat;
  mat.sense = Sense::maximize;
  mat.entries.resize(m_count, m_count);
  for (int e = 0; e < m_count; ++e)
    for (int j = 0; j < m_count; ++j)
      mat.entries(e, j) = slot_cost_exact(ts, U[e], cat.slot_types()[slots[j]]);
  auto res = hungarian(mat);
  OutlineEvaluation3DM eval;
  eval.value = res.value;
  eval.slot_of_elem = std::move(res.permutation);
  return eval;
}

namespace {

TunnelSolveResult solve_common(const TunnelSystem& ts, const std::array<const std::vector<int>*, 3>& cls,
                               int n_cycles, bool dm, const SolveOptions& opts) {
  ts.validate();
  const int k = ts.tunnel_count();
  if (k > opts.max_k && !opts.force_k) throw DomainError("outline space too large");
  if (n_cycles < 1) throw DomainError("instance needs n >= 1");
  if ((dm ? 3 * n_cycles : n_cycles) > kMaxOutlineSize)
    throw DomainError("instance too large for the outline solver");

  const CycleCatalog cat = CycleCatalog::build(k);
  const std::vector<int> active = active_ids(cat, opts.dedup, dm);

  const auto scaled = try_scale(ts);
  EngineResult eng;
  SolveStats stats;
  stats.dedup = opts.dedup;
  if (scaled) {
    const Integer& d = scaled->denom;
    auto inc_val = [st = &*scaled, k](int elem, std::uint16_t inc) {
      const int t = inc >> 1;
      const std::size_t base = static_cast<std::size_t>(elem) * k + t;
      return (inc & 1) ? st->back[base] : st->front[base];
    };
    const Rational unit = make_rational(Integer(1), d);
    eng = dm ? run_engine<std::int64_t, 1>(cat, active, cls, n_cycles, opts, inc_val, unit)
             : run_engine<std::int64_t, 3>(cat, active, cls, n_cycles, opts, inc_val, unit);
    stats.used_int64_fast_path = true;
  } else {
    auto inc_val = [&ts](int elem, std::uint16_t inc) {
      const int t = inc >> 1;
      return (inc & 1) ? ts.back(elem, t) : ts.front(elem, t);
    };
    eng = dm ? run_engine<Rational, 1>(cat, active, cls, n_cycles, opts, inc_val, Rational(1))
             : run_engine<Rational, 3>(cat, active, cls, n_cycles, opts, inc_val, Rational(1));
  }
  stats.outlines_evaluated = eng.evaluated;

  std::vector<std::uint16_t> type_ids(eng.winning_active.size());
  for (std::size_t i = 0; i < type_ids.size(); ++i)
    type_ids[i] = static_cast<std::uint16_t>(active[eng.winning_active[i]]);
  TunnelSolveResult out;
  out.winning = Outline::from_ids(type_ids.data(), n_cycles);
  out.stats = stats;

  // Recover triples from cycle-instance membership of the slots.
  if (!dm) {
    auto eval = evaluate_outline_3ap(out.winning, ts, *cls[0], *cls[1], *cls[2]);
    if (eval.value != eng.value)
      throw InternalError("outline fast path disagrees with the exact recovery");
    std::vector<std::array<int, 3>> triples(n_cycles);
    for (int c = 0; c < 3; ++c)
      for (int e = 0; e < n_cycles; ++e) triples[eval.slot_of_elem[c][e]][c] = e;
    std::sort(triples.begin(), triples.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    out.solution.triples = std::move(triples);
    out.solution.value = Value::from_exact(eval.value);
  } else {
    auto eval = evaluate_outline_3dm(out.winning, ts, *cls[0]);
    if (eval.value != eng.value)
      throw InternalError("outline fast path disagrees with the exact recovery");
    std::vector<std::array<int, 3>> triples(n_cycles, {-1, -1, -1});
    for (int e = 0; e < 3 * n_cycles; ++e) {
      const int slot = eval.slot_of_elem[e];
      triples[slot / 3][slot % 3] = e;
    }
    for (auto& t : triples) std::sort(t.begin(), t.end());
    std::sort(triples.begin(), triples.end());
    out.solution.triples = std::move(triples);
    out.solution.value = Value::from_exact(eval.value);
  }
  return out;
}

}  // namespace

TunnelSolveResult solve_max3ap_tunneling(const TunnelSystem& ts, const std::vector<int>& X,
                                         const std::vector<int>& Y, const std::vector<int>& Z,
                                         const SolveOptions& opts) {
  if (X.size() != Y.size() || X.size() != Z.size()) throw DomainError("instance needs |X| = |Y| = |Z|");
  return solve_common(ts, {&X, &Y, &Z}, static_cast<int>(X.size()), false, opts);
}

TunnelSolveResult solve_max3dm_tunneling(const TunnelSystem& ts, const std::vector<int>& U,
                                         const SolveOptions& opts) {
  if (U.size() % 3 != 0 || U.empty()) throw DomainError("instance needs |U| divisible by 3");
  return solve_common(ts, {&U, &U, &U}, static_cast<int>(U.size()) / 3, true, opts);
}

TunnelSolveResult solve_max3ap_polyhedral(const Instance3AP& inst, const SolveOptions& opts) {
  inst.validate();
  const auto* poly = std::get_if<PolyhedralNorm>(&inst.norm);
  if (!poly) throw DomainError("exact solver requires a polyhedral norm");
  const int n = inst.size();
  std::vector<Point> elements;
  elements.reserve(3 * n);
  for (const auto& p : inst.X) elements.push_back(p);
  for (const auto& p : inst.Y) elements.push_back(p);
  for (const auto& p : inst.Z) elements.push_back(p);
  TunnelSystem ts = tunnels_from_polyhedral(*poly, elements);
  std::vector<int> X(n), Y(n), Z(n);
  for (int i = 0; i < n; ++i) {
    X[i] = i;
    Y[i] = n + i;
    Z[i] = 2 * n + i;
  }
  return solve_max3ap_tunneling(ts, X, Y, Z, opts);
}

struct OutlineEvaluator::Impl {
  CycleCatalog cat;
  int n = 0;
  bool scaled_mode = false;
  Rational unit{1};
  std::array<SlotCostTable<std::int64_t>, 3> itabs;
  std::array<SlotCostTable<Rational>, 3> rtabs;
  JVWorkspace<std::int64_t> iws;
  JVWorkspace<Rational> rws;
  std::vector<std::int64_t> ineg;
  std::vector<Rational> rneg;

  template <class S>
  S class_value(const SlotCostTable<S>& tab, const std::vector<int>& slots, std::vector<S>& neg,
                JVWorkspace<S>& ws) const {
    const int m = static_cast<int>(slots.size());
    neg.assign(static_cast<std::size_t>(m) * m, S(0));
    for (int r = 0; r < m; ++r)
      for (int j = 0; j < m; ++j)
        neg[static_cast<std::size_t>(r) * m + j] = -tab.cost[static_cast<std::size_t>(r) * tab.M + slots[j]];
    return -min_assignment_raw(neg.data(), m, ws);
  }
};

OutlineEvaluator::OutlineEvaluator(const TunnelSystem& ts, std::vector<int> X, std::vector<int> Y,
                                   std::vector<int> Z)
    : impl_(std::make_unique<Impl>()) {
  ts.validate();
  impl_->cat = CycleCatalog::build(ts.tunnel_count());
  impl_->n = static_cast<int>(X.size());
  if (Y.size() != X.size() || Z.size() != X.size()) throw DomainError("instance needs |X| = |Y| = |Z|");
  const std::array<const std::vector<int>*, 3> classes = {&X, &Y, &Z};
  const auto scaled = try_scale(ts);
  const int k = ts.tunnel_count();
  if (scaled) {
    impl_->scaled_mode = true;
    impl_->unit = make_rational(Integer(1), scaled->denom);
    auto inc_val = [st = &*scaled, k](int elem, std::uint16_t inc) {
      const int t = inc >> 1;
      const std::size_t base = static_cast<std::size_t>(elem) * k + t;
      return (inc & 1) ? st->back[base] : st->front[base];
    };
    for (int c = 0; c < 3; ++c)
      impl_->itabs[c] = build_cost_table<std::int64_t>(*classes[c], impl_->cat.slot_types(), inc_val);
  } else {
    auto inc_val = [&ts](int elem, std::uint16_t inc) {
      const int t = inc >> 1;
      return (inc & 1) ? ts.back(elem, t) : ts.front(elem, t);
    };
    for (int c = 0; c < 3; ++c)
      impl_->rtabs[c] = build_cost_table<Rational>(*classes[c], impl_->cat.slot_types(), inc_val);
  }
}

OutlineEvaluator::~OutlineEvaluator() = default;
OutlineEvaluator::OutlineEvaluator(OutlineEvaluator&&) noexcept = default;

Rational OutlineEvaluator::value(const Outline& o) {
  if (o.total() != impl_->n) throw DomainError("outline size does not match the instance");
  std::array<std::vector<int>, 3> slots;
  for (int c = 0; c < 3; ++c) slots[c] = expand_slot_instances(o, impl_->cat, c);
  if (impl_->scaled_mode) {
    std::int64_t total = 0;
    for (int c = 0; c < 3; ++c)
      total += impl_->class_value(impl_->itabs[c], slots[c], impl_->ineg, impl_->iws);
    return Rational(Integer(static_cast<long>(total))) * impl_->unit;
  }
  Rational total(0);
  for (int c = 0; c < 3; ++c)
    total += impl_->class_value(impl_->rtabs[c], slots[c], impl_->rneg, impl_->rws);
  return total;
}

TunnelSolveResult solve_max3dm_polyhedral(const Instance3DM& inst, const SolveOptions& opts) {
  inst.validate();
  const auto* poly = std::get_if<PolyhedralNorm>(&inst.norm);
  if (!poly) throw DomainError("exact solver requires a polyhedral norm");
  TunnelSystem ts = tunnels_from_polyhedral(*poly, inst.U);
  std::vector<int> U(inst.U.size());
  for (std::size_t i = 0; i < U.size(); ++i) U[i] = static_cast<int>(i);
  return solve_max3dm_tunneling(ts, U, opts);
}

}  // namespace geo3ap
