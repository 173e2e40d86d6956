#include "geo3ap/io.hpp"

#include <algorithm>

namespace geo3ap::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw DomainError(path + ": " + what);
}

void check_keys(const Json& j, const std::vector<std::string>& allowed, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [key, _] : j.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      fail(path + "/" + key, "unknown field");
}

Rational parse_rational_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const DomainError& e) {
      fail(path, e.what());
    }
  }
  if (j.is_number_integer()) return Rational(Integer(j.get<std::int64_t>()));
  fail(path, "rational must be a string like \"3\" or \"-4/5\" (floating point is rejected)");
}

Json rational_json(const Rational& r) { return Json(format_rational(r)); }

std::vector<Point> parse_point_list(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of points");
  std::vector<Point> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_point(j[i], path + "/" + std::to_string(i)));
  return out;
}

Json point_list_json(const std::vector<Point>& pts) {
  Json arr = Json::array();
  for (const auto& p : pts) arr.push_back(point_to_json(p));
  return arr;
}

Json parse_document(const std::string& bytes) {
  try {
    return Json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

Point parse_point(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty coordinate array");
  Point p(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    p(static_cast<Eigen::Index>(i)) = parse_rational_json(j[i], path + "/" + std::to_string(i));
  return p;
}

Json point_to_json(const Point& p) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) arr.push_back(rational_json(p(i)));
  return arr;
}

Norm parse_norm(const Json& j, const std::string& path) {
  check_keys(j, {"kind", "h", "p"}, path);
  if (!j.contains("kind") || !j["kind"].is_string()) fail(path, "norm needs a \"kind\" string");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "polyhedral") {
    if (!j.contains("h") || !j["h"].is_array() || j["h"].empty())
      fail(path + "/h", "polyhedral norm needs facet vectors");
    if (j.contains("p")) fail(path + "/p", "unknown field");
    const auto& rows = j["h"];
    const std::size_t k = rows.size();
    std::vector<Point> hvecs;
    for (std::size_t i = 0; i < k; ++i) hvecs.push_back(parse_point(rows[i], path + "/h/" + std::to_string(i)));
    const Eigen::Index s = hvecs.front().size();
    RatMat m(k, s);
    for (std::size_t i = 0; i < k; ++i) {
      if (hvecs[i].size() != s) fail(path + "/h", "facet vectors must share one dimension");
      m.row(static_cast<Eigen::Index>(i)) = hvecs[i].transpose();
    }
    return Norm{PolyhedralNorm(std::move(m))};
  }
  if (kind == "lp") {
    if (j.contains("h")) fail(path + "/h", "unknown field");
    if (!j.contains("p")) fail(path + "/p", "lp norm needs an exponent");
    if (j["p"].is_string() && j["p"].get<std::string>() == "inf") return Norm{LpNorm::inf()};
    return Norm{LpNorm::make(parse_rational_json(j["p"], path + "/p"))};
  }
  fail(path + "/kind", "unknown norm kind '" + kind + "'");
}

Json norm_to_json(const Norm& norm) {
  Json j;
  if (const auto* poly = std::get_if<PolyhedralNorm>(&norm)) {
    j["kind"] = "polyhedral";
    Json rows = Json::array();
    for (int i = 0; i < poly->facet_count(); ++i) rows.push_back(point_to_json(poly->facet(i)));
    j["h"] = std::move(rows);
    return j;
  }
  const auto& lp = std::get<LpNorm>(norm);
  j["kind"] = "lp";
  j["p"] = lp.infinite ? Json("inf") : rational_json(lp.p);
  return j;
}

LoadedInstance parse_instance(const std::string& bytes) {
  const Json j = parse_document(bytes);
  check_keys(j, {"format", "norm", "X", "Y", "Z", "U", "metadata"}, "");
  if (!j.contains("format") || j["format"] != "geo3ap-instance/1")
    fail("/format", "expected \"geo3ap-instance/1\"");
  if (!j.contains("norm")) fail("/norm", "missing");
  Norm norm = parse_norm(j["norm"], "/norm");

  LoadedInstance li{Instance3AP{}, Json()};
  const bool has_xyz = j.contains("X") || j.contains("Y") || j.contains("Z");
  if (j.contains("U")) {
    if (has_xyz) fail("/U", "an instance carries either X/Y/Z or U, not both");
    Instance3DM inst;
    inst.norm = std::move(norm);
    inst.U = parse_point_list(j["U"], "/U");
    if (inst.U.size() % 3 != 0)
      fail("/U", "|U| = " + std::to_string(inst.U.size()) + " is not divisible by 3");
    inst.validate();
    li.problem = std::move(inst);
  } else {
    if (!j.contains("X") || !j.contains("Y") || !j.contains("Z"))
      fail("", "instance needs X, Y and Z (or U)");
    Instance3AP inst;
    inst.norm = std::move(norm);
    inst.X = parse_point_list(j["X"], "/X");
    inst.Y = parse_point_list(j["Y"], "/Y");
    inst.Z = parse_point_list(j["Z"], "/Z");
    if (inst.X.size() != inst.Y.size() || inst.X.size() != inst.Z.size())
      fail("", "|X| = " + std::to_string(inst.X.size()) + ", |Y| = " + std::to_string(inst.Y.size()) +
               ", |Z| = " + std::to_string(inst.Z.size()) + " must be equal");
    inst.validate();
    li.problem = std::move(inst);
  }
  if (j.contains("metadata")) li.metadata = j["metadata"];
  return li;
}

std::string emit_instance(const LoadedInstance& li) {
  Json j;
  j["format"] = "geo3ap-instance/1";
  if (const auto* ap = std::get_if<Instance3AP>(&li.problem)) {
    j["norm"] = norm_to_json(ap->norm);
    j["X"] = point_list_json(ap->X);
    j["Y"] = point_list_json(ap->Y);
    j["Z"] = point_list_json(ap->Z);
  } else {
    const auto& dm = std::get<Instance3DM>(li.problem);
    j["norm"] = norm_to_json(dm.norm);
    j["U"] = point_list_json(dm.U);
  }
  if (!li.metadata.is_null()) j["metadata"] = li.metadata;
  return j.dump(2) + "\n";
}

std::string emit_result(const ResultData& r) {
  Json j;
  j["format"] = "geo3ap-result/1";
  j["algorithm"] = r.algorithm;
  j["problem"] = r.problem;
  j["sense"] = r.sense;
  Json value;
  if (r.value.exact) value["exact"] = rational_json(*r.value.exact);
  value["approx"] = format_double(r.value.approx);
  j["value"] = std::move(value);
  Json triples = Json::array();
  for (const auto& t : r.triples) triples.push_back(Json::array({t[0], t[1], t[2]}));
  j["triples"] = std::move(triples);
  if (r.winning_outline) j["winning_outline"] = *r.winning_outline;
  if (r.outlines_evaluated) j["outlines_evaluated"] = *r.outlines_evaluated;
  if (r.dedup) j["dedup"] = *r.dedup;
  if (r.guarantee) {
    Json g;
    g["eps"] = rational_json(r.guarantee->eps);
    g["k"] = r.guarantee->k;
    g["contraction"] = rational_json(r.guarantee->contraction);
    g["contraction_approx"] = format_double(to_double(r.guarantee->contraction));
    g["polygonal_value"] = rational_json(r.guarantee->polygonal_value);
    g["euclidean_value"] = format_double(r.guarantee->euclidean_value);
    j["guarantee"] = std::move(g);
  }
  if (r.attainment) {
    Json a;
    a["threshold_long_pairs"] = r.attainment->threshold_long_pairs;
    a["long_pairs"] = r.attainment->long_pairs;
    a["attained"] = r.attainment->attained;
    j["attainment"] = std::move(a);
  }
  return j.dump(2) + "\n";
}

namespace {

int parse_vertex(const Json& j, int q, const std::string& path) {
  if (!j.is_string()) fail(path, "vertex must be a string like \"1:0\"");
  const std::string s = j.get<std::string>();
  const auto colon = s.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 >= s.size())
    fail(path, "vertex must be \"part:index\" with part in {1,2,3}");
  int part = 0, idx = 0;
  try {
    part = std::stoi(s.substr(0, colon));
    idx = std::stoi(s.substr(colon + 1));
  } catch (...) {
    fail(path, "vertex must be \"part:index\" with numeric fields");
  }
  if (part < 1 || part > 3) fail(path, "part must be 1, 2 or 3");
  if (idx < 0 || idx >= q) fail(path, "index out of range for q = " + std::to_string(q));
  return (part - 1) * q + idx;
}

std::string vertex_name(int v, int q) {
  return std::to_string(v / q + 1) + ":" + std::to_string(v % q);
}

}  // namespace

PitGraph parse_graph(const std::string& bytes) {
  const Json j = parse_document(bytes);
  check_keys(j, {"q", "edges"}, "");
  if (!j.contains("q") || !j["q"].is_number_integer()) fail("/q", "needs an integer part size");
  PitGraph g;
  g.q = j["q"].get<int>();
  if (g.q < 1) fail("/q", "q must be positive");
  if (!j.contains("edges") || !j["edges"].is_array()) fail("/edges", "needs an edge array");
  const auto& edges = j["edges"];
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string path = "/edges/" + std::to_string(i);
    if (!edges[i].is_array() || edges[i].size() != 2) fail(path, "edge must be a two-vertex array");
    const int u = parse_vertex(edges[i][0], g.q, path + "/0");
    const int v = parse_vertex(edges[i][1], g.q, path + "/1");
    try {
      g.add_edge(u, v);
    } catch (const DomainError& e) {
      fail(path, e.what());
    }
  }
  return g;
}

std::string emit_graph(const PitGraph& g) {
  Json j;
  j["q"] = g.q;
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges)
    edges.push_back(Json::array({vertex_name(u, g.q), vertex_name(v, g.q)}));
  j["edges"] = std::move(edges);
  return j.dump(2) + "\n";
}

std::string emit_lattice_spec(const LatticeSpec& spec) {
  Json j;
  j["format"] = "geo3ap-lattice/1";
  j["norm"] = norm_to_json(Norm{spec.norm});
  j["scale"] = rational_json(spec.scale);
  j["alpha"] = spec.alpha.get_str();
  for (int i = 0; i < 5; ++i) j["p" + std::to_string(i)] = point_to_json(spec.points[i]);
  j["v1"] = point_to_json(spec.v1);
  j["v2"] = point_to_json(spec.v2);
  j["delta"] = rational_json(spec.delta);
  return j.dump(2) + "\n";
}

LatticeSpec parse_lattice_spec(const std::string& bytes) {
  const Json j = parse_document(bytes);
  check_keys(j, {"format", "norm", "scale", "alpha", "p0", "p1", "p2", "p3", "p4", "v1", "v2", "delta"},
             "");
  if (!j.contains("format") || j["format"] != "geo3ap-lattice/1")
    fail("/format", "expected \"geo3ap-lattice/1\"");
  for (const char* key : {"norm", "scale", "alpha", "p0", "p1", "p2", "p3", "p4", "v1", "v2", "delta"})
    if (!j.contains(key)) fail(std::string("/") + key, "missing");
  Norm norm = parse_norm(j["norm"], "/norm");
  const auto* poly = std::get_if<PolyhedralNorm>(&norm);
  if (!poly) fail("/norm", "lattice specs carry a polyhedral norm");
  LatticeSpec spec{*poly,
                   parse_rational_json(j["scale"], "/scale"),
                   Integer(parse_rational_json(j["alpha"], "/alpha").get_num()),
                   {},
                   parse_point(j["v1"], "/v1"),
                   parse_point(j["v2"], "/v2"),
                   parse_rational_json(j["delta"], "/delta")};
  if (parse_rational_json(j["alpha"], "/alpha").get_den() != 1) fail("/alpha", "alpha must be an integer");
  for (int i = 0; i < 5; ++i)
    spec.points[i] = parse_point(j["p" + std::to_string(i)], "/p" + std::to_string(i));
  return spec;
}

std::string emit_lattice_report(const LatticeReport& rep) {
  Json j;
  j["pass"] = rep.pass;
  j["message"] = rep.message;
  j["pairs_checked"] = rep.pairs_checked;
  j["triples_checked"] = rep.triples_checked;
  auto coords = [](const std::pair<long, long>& c) { return Json::array({c.first, c.second}); };
  if (rep.bad_pair) j["bad_pair"] = Json::array({coords((*rep.bad_pair)[0]), coords((*rep.bad_pair)[1])});
  if (rep.bad_triple)
    j["bad_triple"] = Json::array(
        {coords((*rep.bad_triple)[0]), coords((*rep.bad_triple)[1]), coords((*rep.bad_triple)[2])});
  return j.dump(2) + "\n";
}

std::string emit_embedding_report(const EmbeddingReport& rep) {
  Json j;
  j["distances_ok"] = rep.distances_ok;
  if (rep.bad_pair) j["bad_pair"] = Json::array({rep.bad_pair->first, rep.bad_pair->second});
  j["partition_exists"] = rep.partition_exists;
  j["attained"] = rep.attained;
  j["message"] = rep.message;
  return j.dump(2) + "\n";
}

Json hardness_metadata(const HardnessInstance& h, const std::string& generator) {
  Json m;
  m["generator"] = generator;
  m["q"] = h.q;
  if (h.p) m["p"] = rational_json(*h.p);
  m["ell_star_power"] = rational_json(h.long_power);
  m["short_power"] = rational_json(h.short_power);
  m["threshold_long_pairs"] = h.threshold_long_pairs;
  if (h.threshold_exact) m["threshold"] = rational_json(*h.threshold_exact);
  return m;
}

}  // namespace geo3ap::io
