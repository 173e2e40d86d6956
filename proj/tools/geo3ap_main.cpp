// Command-line surface: exact and approximate max-3AP/3DM solvers, hardness
// instance generators, lattice construction, and verification utilities.
// Exit codes: 0 success, 2 domain/usage errors, 3 verification failure.

#include "geo3ap/generators.hpp"
#include "geo3ap/io.hpp"
#include "geo3ap/lattice.hpp"
#include "geo3ap/oracle.hpp"
#include "geo3ap/parallel.hpp"
#include "geo3ap/ptas.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace geo3ap;
using Clock = std::chrono::steady_clock;

constexpr double kOutlineGate = 1e10;  // predicted outlines needing --yes

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open output file '" + path + "'");
  out << bytes;
}

Norm parse_norm_spec(const std::string& spec, std::uint64_t seed) {
  if (spec == "manhattan" || spec == "l1-2d") return Norm{manhattan_norm_2d()};
  if (spec == "linf" || spec == "linf2d") return Norm{linf_norm_2d()};
  if (spec == "l1") return Norm{LpNorm::make(Rational(1))};
  if (spec == "l2") return Norm{LpNorm::make(Rational(2))};
  if (spec == "lp:inf") return Norm{LpNorm::inf()};
  if (spec.rfind("lp:", 0) == 0) return Norm{LpNorm::make(parse_rational(spec.substr(3)))};
  if (spec.rfind("random-poly:", 0) == 0) {
    const int k = std::stoi(spec.substr(12));
    if (k < 1 || k > 16) throw DomainError("random-poly expects 1 <= k <= 16");
    Rng rng(seed);
    return Norm{random_polyhedral_2d(rng, k)};
  }
  if (!spec.empty() && spec[0] == '@') {
    const auto bytes = read_input(spec.substr(1));
    return io::parse_norm(io::Json::parse(bytes), "/norm");
  }
  throw DomainError("unknown norm spec '" + spec +
                    "' (use manhattan, linf, l1, l2, lp:<p>, lp:inf, random-poly:<k>, @file)");
}

struct SolveFlags {
  std::string input, output;
  std::string mode = "exact";
  std::string eps = "1/4";
  int threads = 0;
  std::string dedup = "off";
  bool force_k = false;
  bool yes = false;
  int oracle_limit = 0;  // 0 = defaults
};

void add_common_solve_flags(CLI::App* cmd, SolveFlags& f, bool with_mode) {
  cmd->add_option("--input", f.input, "instance file (default: stdin)");
  cmd->add_option("--output", f.output, "result file (default: stdout)");
  if (with_mode) {
    cmd->add_option("--mode", f.mode, "exact | ptas | brute-force")->default_str("exact");
    cmd->add_option("--eps", f.eps, "PTAS accuracy (rational in (0,1))")->default_str("1/4");
  }
  cmd->add_option("--threads", f.threads, "worker threads (default: GEO3AP_THREADS or hardware)");
  cmd->add_option("--dedup", f.dedup, "on | off: merge interchangeable cycle types")->default_str("off");
  cmd->add_flag("--force-k", f.force_k, "solve even when the tunnel count exceeds the guard");
  cmd->add_flag("--yes", f.yes, "confirm runs whose predicted outline count exceeds the gate");
  cmd->add_option("--oracle-limit", f.oracle_limit, "raise the brute-force size cap");
}

OracleLimits oracle_limits(const SolveFlags& f) {
  OracleLimits lim;
  if (f.oracle_limit > 0) {
    lim.max_n_3ap = f.oracle_limit;
    lim.max_u_3dm = f.oracle_limit;
  }
  return lim;
}

SolveOptions solve_options(const SolveFlags& f) {
  SolveOptions o;
  o.threads = f.threads > 0 ? f.threads : default_thread_count();
  if (f.dedup != "on" && f.dedup != "off") throw DomainError("--dedup expects on or off");
  o.dedup = f.dedup == "on";
  o.force_k = f.force_k;
  return o;
}

void gate_outline_count(const Integer& predicted, bool yes) {
  if (!yes && Rational(predicted) > Rational(Integer(static_cast<unsigned long>(kOutlineGate))))
    throw DomainError("predicted outline count " + predicted.get_str() +
                      " exceeds the confirmation gate; rerun with --yes");
}

// attainment bookkeeping for instances generated from PIT graphs
std::optional<io::ResultData::Attainment> attainment_block(const io::LoadedInstance& li,
                                                           const std::vector<std::array<int, 3>>& triples) {
  const auto& m = li.metadata;
  if (!m.is_object() || !m.contains("threshold_long_pairs") || !m.contains("ell_star_power"))
    return std::nullopt;
  const auto* inst = std::get_if<Instance3AP>(&li.problem);
  if (!inst) return std::nullopt;
  const auto* lp = std::get_if<LpNorm>(&inst->norm);
  if (!lp) return std::nullopt;
  const Rational long_power = parse_rational(m["ell_star_power"].get<std::string>());
  int long_pairs = 0;
  auto pair_power = [&](const Point& a, const Point& b) {
    const auto d = lp_distance(*lp, a, b);
    if (lp->infinite) return *d.exact;
    if (d.power_sum) return *d.power_sum;
    long count = 0;  // generator coordinates are 0/1
    for (Eigen::Index c = 0; c < a.size(); ++c)
      if (a(c) != b(c)) ++count;
    return Rational(count);
  };
  for (const auto& t : triples) {
    const Point& x = inst->X[t[0]];
    const Point& y = inst->Y[t[1]];
    const Point& z = inst->Z[t[2]];
    long_pairs += (pair_power(x, y) == long_power) + (pair_power(y, z) == long_power) +
                  (pair_power(z, x) == long_power);
  }
  io::ResultData::Attainment a;
  a.threshold_long_pairs = m["threshold_long_pairs"].get<int>();
  a.long_pairs = long_pairs;
  a.attained = long_pairs == a.threshold_long_pairs;
  return a;
}

int run_solve(const SolveFlags& f, const std::string& problem, Sense sense) {
  const auto t0 = Clock::now();
  io::LoadedInstance li = io::parse_instance(read_input(f.input));
  if ((problem == "3dm") != li.is_3dm())
    throw DomainError("instance does not match --problem " + problem);

  io::ResultData result;
  result.problem = problem;
  result.sense = sense == Sense::maximize ? "max" : "min";

  const SolveOptions opts = solve_options(f);
  if (sense == Sense::minimize || f.mode == "brute-force") {
    if (sense == Sense::minimize && f.mode != "brute-force")
      throw DomainError("minimization is NP-hard for every norm; only --mode brute-force is available");
    result.algorithm = "brute-force";
    Solution sol = li.is_3dm()
                       ? brute_force_3dm(std::get<Instance3DM>(li.problem), sense, oracle_limits(f))
                       : brute_force_3ap(std::get<Instance3AP>(li.problem), sense, oracle_limits(f));
    result.value = sol.value;
    result.triples = sol.triples;
  } else if (f.mode == "ptas") {
    if (li.is_3dm()) throw DomainError("the PTAS is implemented for 3AP instances");
    const Rational eps = parse_rational(f.eps);
    const auto& inst = std::get<Instance3AP>(li.problem);
    gate_outline_count(ptas_outline_count(eps, inst.size()), f.yes);
    const auto scheme = polygonal_norm_for_eps(eps);
    std::cerr << "ptas: eps=" << format_rational(eps) << " directions k=" << scheme.k()
              << " predicted outlines=" << ptas_outline_count(eps, inst.size()).get_str() << "\n";
    auto res = ptas_solve_max3ap(inst, eps, opts);
    result.algorithm = "ptas";
    result.value = res.solution.value;
    result.triples = res.solution.triples;
    result.winning_outline = res.winning.encode();
    result.outlines_evaluated = res.stats.outlines_evaluated;
    result.dedup = opts.dedup;
    result.guarantee = io::ResultData::Guarantee{res.scheme.epsilon, res.scheme.k(),
                                                 res.scheme.contraction, res.polygonal_value,
                                                 res.solution.value.approx};
  } else if (f.mode == "exact") {
    const bool polyhedral = li.is_3dm()
                                ? std::holds_alternative<PolyhedralNorm>(std::get<Instance3DM>(li.problem).norm)
                                : std::holds_alternative<PolyhedralNorm>(std::get<Instance3AP>(li.problem).norm);
    if (polyhedral) {
      int k = 0, n = 0;
      if (li.is_3dm()) {
        const auto& inst = std::get<Instance3DM>(li.problem);
        k = std::get<PolyhedralNorm>(inst.norm).facet_count();
        n = inst.triple_count();
      } else {
        const auto& inst = std::get<Instance3AP>(li.problem);
        k = std::get<PolyhedralNorm>(inst.norm).facet_count();
        n = inst.size();
      }
      gate_outline_count(outline_count(8 * k * k * k, n), f.yes);
      auto res = li.is_3dm() ? solve_max3dm_polyhedral(std::get<Instance3DM>(li.problem), opts)
                             : solve_max3ap_polyhedral(std::get<Instance3AP>(li.problem), opts);
      result.algorithm = "tunneling-exact";
      result.value = res.solution.value;
      result.triples = res.solution.triples;
      result.winning_outline = res.winning.encode();
      result.outlines_evaluated = res.stats.outlines_evaluated;
      result.dedup = opts.dedup;
    } else {
      // Lp norm: the tunneling reduction does not apply; fall back to the
      // oracle when the instance is small enough.
      std::cerr << "exact mode needs a polyhedral norm; falling back to the brute-force oracle\n";
      result.algorithm = "brute-force";
      Solution sol = li.is_3dm()
                         ? brute_force_3dm(std::get<Instance3DM>(li.problem), sense, oracle_limits(f))
                         : brute_force_3ap(std::get<Instance3AP>(li.problem), sense, oracle_limits(f));
      result.value = sol.value;
      result.triples = sol.triples;
    }
  } else {
    throw DomainError("unknown --mode '" + f.mode + "'");
  }

  if (!li.is_3dm() && sense == Sense::maximize)
    result.attainment = attainment_block(li, result.triples);

  write_output(f.output, io::emit_result(result));
  const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  std::cerr << "solved in " << dt << " s";
  if (result.outlines_evaluated) std::cerr << " (" << *result.outlines_evaluated << " outlines)";
  std::cerr << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric 3-dimensional assignment and matching solvers"};
  app.require_subcommand(1);

  // --- solve-max / solve-min / solve ---
  SolveFlags max_flags;
  auto* solve_max = app.add_subcommand("solve-max", "maximize total triangle perimeter");
  add_common_solve_flags(solve_max, max_flags, true);

  SolveFlags min_flags;
  bool min_bf = false;
  auto* solve_min = app.add_subcommand("solve-min", "minimize total triangle perimeter (oracle only)");
  add_common_solve_flags(solve_min, min_flags, false);
  solve_min->add_flag("--brute-force", min_bf, "use the exhaustive oracle (required)");

  SolveFlags gen_flags;
  std::string solve_problem = "3ap", solve_sense = "max";
  bool solve_bf = false;
  auto* solve_any = app.add_subcommand("solve", "solve with an explicit problem/sense selection");
  solve_any->add_option("--problem", solve_problem, "3ap | 3dm")->default_str("3ap");
  solve_any->add_option("--sense", solve_sense, "max | min")->default_str("max");
  solve_any->add_flag("--brute-force", solve_bf, "use the exhaustive oracle");
  add_common_solve_flags(solve_any, gen_flags, true);

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "instance generators");
  gen->require_subcommand(1);

  std::string g_graph, g_output, g_p = "2";
  auto* gen_pit_lp = gen->add_subcommand("pit-lp", "embed a 6-regular tripartite graph under an Lp norm");
  gen_pit_lp->add_option("--graph", g_graph, "graph file (default: stdin)");
  gen_pit_lp->add_option("--p", g_p, "exponent p >= 1")->default_str("2");
  gen_pit_lp->add_option("--output", g_output, "instance file (default: stdout)");

  std::string gi_graph, gi_output;
  auto* gen_pit_linf = gen->add_subcommand("pit-linf", "embed a 6-regular tripartite graph under Linf");
  gen_pit_linf->add_option("--graph", gi_graph, "graph file (default: stdin)");
  gen_pit_linf->add_option("--output", gi_output, "instance file (default: stdout)");

  std::string k_embedding = "lp", k_p = "2", k_output;
  auto* gen_k333 = gen->add_subcommand("k333", "embed the complete tripartite graph K_{3,3,3}");
  gen_k333->add_option("--embedding", k_embedding, "lp | linf")->default_str("lp");
  gen_k333->add_option("--p", k_p, "exponent for the lp embedding")->default_str("2");
  gen_k333->add_option("--output", k_output, "instance file (default: stdout)");

  int r_n = 2, r_dim = 2, r_den = 3;
  long r_range = 20;
  std::uint64_t r_seed = 1;
  std::string r_norm = "manhattan", r_problem = "3ap", r_output;
  auto* gen_random = gen->add_subcommand("random", "random rational instance");
  gen_random->add_option("--n", r_n, "triples per instance")->required();
  gen_random->add_option("--dim", r_dim, "space dimension")->default_str("2");
  gen_random->add_option("--norm", r_norm, "manhattan | linf | l1 | l2 | lp:<p> | random-poly:<k> | @file");
  gen_random->add_option("--seed", r_seed, "RNG seed")->default_str("1");
  gen_random->add_option("--coord-range", r_range, "numerator range")->default_str("20");
  gen_random->add_option("--den-pow2", r_den, "denominators up to 2^this")->default_str("3");
  gen_random->add_option("--problem", r_problem, "3ap | 3dm")->default_str("3ap");
  gen_random->add_option("--output", r_output, "instance file (default: stdout)");

  std::string reg_graph, reg_output;
  auto* gen_reg = gen->add_subcommand("regularize", "raise all degrees of a tripartite graph to 6");
  gen_reg->add_option("--graph", reg_graph, "graph file (default: stdin)");
  gen_reg->add_option("--output", reg_output, "graph file (default: stdout)");

  // --- lattice ---
  auto* lattice = app.add_subcommand("lattice", "cheapest-triangle lattice construction");
  lattice->require_subcommand(1);

  std::string lb_norm = "linf", lb_output;
  std::uint64_t lb_seed = 1;
  int lb_window = 0;
  long lb_bound_n = 0;
  auto* lattice_build = lattice->add_subcommand("build", "construct generators for a 2-D polyhedral norm");
  lattice_build->add_option("--norm", lb_norm, "manhattan | linf | random-poly:<k> | @file");
  lattice_build->add_option("--seed", lb_seed, "seed for random-poly norms")->default_str("1");
  lattice_build->add_option("--verify-window", lb_window, "verify the window [0,W)^2 after building");
  lattice_build->add_option("--bound-n", lb_bound_n, "also print the threshold ceil(n * delta)");
  lattice_build->add_option("--output", lb_output, "spec file (default: stdout)");

  std::string lv_spec;
  int lv_window = 6;
  auto* lattice_verify = lattice->add_subcommand("verify", "exhaustively verify a lattice spec");
  lattice_verify->add_option("--spec", lv_spec, "spec file (default: stdin)");
  lattice_verify->add_option("--window", lv_window, "window size W")->default_str("6");

  // --- verify ---
  auto* verify = app.add_subcommand("verify", "verification utilities");
  verify->require_subcommand(1);
  std::string ve_instance, ve_graph;
  auto* verify_emb = verify->add_subcommand("embedding", "check a generated instance against its graph");
  verify_emb->add_option("--instance", ve_instance, "instance file")->required();
  verify_emb->add_option("--graph", ve_graph, "graph file")->required();

  // --- bench ---
  auto* bench = app.add_subcommand("bench", "micro-benchmarks");
  bench->require_subcommand(1);
  int b_k = 2, b_n = 2;
  std::string b_dedup = "off";
  auto* bench_outlines = bench->add_subcommand("outlines", "stream all outlines and report counts");
  bench_outlines->add_option("--k", b_k, "tunnel count")->required();
  bench_outlines->add_option("--n", b_n, "outline size")->required();
  bench_outlines->add_option("--dedup", b_dedup, "on | off")->default_str("off");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // usage problems are domain errors
  }

  try {
    if (solve_max->parsed()) return run_solve(max_flags, "3ap", Sense::maximize);
    if (solve_min->parsed()) {
      if (!min_bf) throw DomainError("minimization is NP-hard for every norm; pass --brute-force");
      min_flags.mode = "brute-force";
      return run_solve(min_flags, "3ap", Sense::minimize);
    }
    if (solve_any->parsed()) {
      if (solve_sense != "max" && solve_sense != "min") throw DomainError("--sense expects max or min");
      if (solve_problem != "3ap" && solve_problem != "3dm")
        throw DomainError("--problem expects 3ap or 3dm");
      if (solve_bf) gen_flags.mode = "brute-force";
      return run_solve(gen_flags, solve_problem,
                       solve_sense == "max" ? Sense::maximize : Sense::minimize);
    }
    if (gen_pit_lp->parsed()) {
      PitGraph g = io::parse_graph(read_input(g_graph));
      HardnessInstance h = pit_to_lp_instance(g, parse_rational(g_p));
      io::LoadedInstance li{std::move(h.instance), io::hardness_metadata(h, "pit-lp")};
      write_output(g_output, io::emit_instance(li));
      return 0;
    }
    if (gen_pit_linf->parsed()) {
      PitGraph g = io::parse_graph(read_input(gi_graph));
      HardnessInstance h = pit_to_linf_instance(g);
      io::LoadedInstance li{std::move(h.instance), io::hardness_metadata(h, "pit-linf")};
      write_output(gi_output, io::emit_instance(li));
      return 0;
    }
    if (gen_k333->parsed()) {
      const PitGraph g = make_k333();
      HardnessInstance h = k_embedding == "linf" ? pit_to_linf_instance(g)
                                                 : pit_to_lp_instance(g, parse_rational(k_p));
      io::LoadedInstance li{std::move(h.instance),
                            io::hardness_metadata(h, k_embedding == "linf" ? "pit-linf" : "pit-lp")};
      write_output(k_output, io::emit_instance(li));
      return 0;
    }
    if (gen_random->parsed()) {
      Rng rng(r_seed);
      Norm norm = parse_norm_spec(r_norm, r_seed);
      PointGenOptions opts{r_dim, r_range, r_den};
      io::LoadedInstance li{Instance3AP{}, io::Json()};
      if (r_problem == "3dm")
        li.problem = random_3dm(rng, r_n, std::move(norm), opts);
      else if (r_problem == "3ap")
        li.problem = random_3ap(rng, r_n, std::move(norm), opts);
      else
        throw DomainError("--problem expects 3ap or 3dm");
      io::Json meta;
      meta["generator"] = "random";
      meta["seed"] = r_seed;
      li.metadata = std::move(meta);
      write_output(r_output, io::emit_instance(li));
      return 0;
    }
    if (gen_reg->parsed()) {
      PitGraph g = io::parse_graph(read_input(reg_graph));
      write_output(reg_output, io::emit_graph(regularize_to_6(g)));
      return 0;
    }
    if (lattice_build->parsed()) {
      Norm norm = parse_norm_spec(lb_norm, lb_seed);
      const auto* poly = std::get_if<PolyhedralNorm>(&norm);
      if (!poly)
        throw DomainError("lattice construction needs a polyhedral norm; approximate L2 first "
                          "(the resulting lattice then certifies the polygonal norm only)");
      LatticeSpec spec = choose_alpha(*poly);
      write_output(lb_output, io::emit_lattice_spec(spec));
      if (lb_bound_n > 0)
        std::cerr << "threshold B(" << lb_bound_n << ") = "
                  << min3ap_threshold(spec, Integer(lb_bound_n)).get_str() << "\n";
      if (lb_window >= 3) {
        LatticeReport rep = verify_lattice(spec, lb_window);
        std::cerr << io::emit_lattice_report(rep);
        if (!rep.pass) return 3;
      }
      return 0;
    }
    if (lattice_verify->parsed()) {
      LatticeSpec spec = io::parse_lattice_spec(read_input(lv_spec));
      LatticeReport rep = verify_lattice(spec, lv_window);
      std::cout << io::emit_lattice_report(rep);
      return rep.pass ? 0 : 3;
    }
    if (verify_emb->parsed()) {
      io::LoadedInstance li = io::parse_instance(read_input(ve_instance));
      PitGraph g = io::parse_graph(read_input(ve_graph));
      const auto* inst = std::get_if<Instance3AP>(&li.problem);
      if (!inst) throw DomainError("embedding verification expects a 3AP instance");
      HardnessInstance h;
      h.instance = *inst;
      h.q = g.q;
      const auto& m = li.metadata;
      if (!m.is_object() || !m.contains("ell_star_power") || !m.contains("short_power"))
        throw DomainError("instance metadata lacks the embedding distance data");
      h.long_power = parse_rational(m["ell_star_power"].get<std::string>());
      h.short_power = parse_rational(m["short_power"].get<std::string>());
      h.threshold_long_pairs = m.contains("threshold_long_pairs")
                                   ? m["threshold_long_pairs"].get<int>()
                                   : 3 * g.q;
      if (m.contains("p")) h.p = parse_rational(m["p"].get<std::string>());
      EmbeddingReport rep = verify_embedding(h, g);
      std::cout << io::emit_embedding_report(rep);
      return rep.pass() ? 0 : 3;
    }
    if (bench_outlines->parsed()) {
      if (b_k < 1 || b_n < 1) throw DomainError("bench needs k >= 1 and n >= 1");
      const CycleCatalog cat = CycleCatalog::build(b_k);
      const bool dd = b_dedup == "on";
      const int T = dd ? static_cast<int>(cat.reps_3ap().size()) : cat.type_count();
      const Integer predicted = outline_count(T, b_n);
      std::cout << "cycle types: " << cat.type_count() << (dd ? " (deduplicated: " : "")
                << (dd ? std::to_string(T) + ")" : "") << "\n";
      std::cout << "predicted outlines: " << predicted.get_str() << "\n";
      gate_outline_count(predicted, false);
      const auto t0 = Clock::now();
      std::uint64_t count = 0;
      enumerate_outlines(T, b_n, [&](const std::uint16_t*, int) { ++count; });
      const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
      std::cout << "streamed outlines: " << count << "\n";
      std::cout << "time: " << dt << " s (" << (dt > 0 ? static_cast<double>(count) / dt : 0)
                << " outlines/s)\n";
      return count == predicted ? 0 : 3;
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
