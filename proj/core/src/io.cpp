#include "gilbert/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace gilbert {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& item : obj.items())
    if (!allowed.contains(item.key()))
      fail(where, "unknown key \"" + item.key() + "\"");
}

const json& require_key(const json& obj, const std::string& key,
                        const std::string& where) {
  if (!obj.contains(key)) fail(where, "missing key \"" + key + "\"");
  return obj.at(key);
}

double require_number(const json& obj, const std::string& key,
                      const std::string& where) {
  const json& v = require_key(obj, key, where);
  if (!v.is_number()) fail(where, "key \"" + key + "\" must be a number");
  return v.get<double>();
}

std::string require_string(const json& obj, const std::string& key,
                           const std::string& where) {
  const json& v = require_key(obj, key, where);
  if (!v.is_string()) fail(where, "key \"" + key + "\" must be a string");
  return v.get<std::string>();
}

Vec parse_point(const json& arr, int dim, const std::string& where) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != dim)
    fail(where, "expected an array of " + std::to_string(dim) + " numbers");
  Vec v(dim);
  for (int i = 0; i < dim; ++i) {
    if (!arr[static_cast<size_t>(i)].is_number())
      fail(where, "coordinates must be numbers");
    v[i] = arr[static_cast<size_t>(i)].get<double>();
  }
  return v;
}

// 17 significant digits: enough to reproduce any double exactly.
std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string point_json(const Vec& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += num(v[i]);
  }
  return s + "]";
}

NormSpace parse_norm(const json& j, int dim) {
  if (!j.is_object()) fail("instance.norm", "must be an object");
  const std::string kind = require_string(j, "kind", "instance.norm");
  if (kind == "euclidean") {
    reject_unknown_keys(j, {"kind"}, "instance.norm");
    return NormSpace::euclidean(dim);
  }
  if (kind == "p") {
    reject_unknown_keys(j, {"kind", "p"}, "instance.norm");
    return NormSpace::p_norm(dim, require_number(j, "p", "instance.norm"));
  }
  fail("instance.norm", "unknown kind \"" + kind + "\"");
}

WeightFunction parse_weight(const json& j) {
  if (!j.is_object()) fail("instance.weight", "must be an object");
  const std::string kind = require_string(j, "kind", "instance.weight");
  const std::string where = "instance.weight";
  if (kind == "constant") {
    reject_unknown_keys(j, {"kind", "d"}, where);
    return WeightFunction::constant(require_number(j, "d", where));
  }
  if (kind == "affine") {
    reject_unknown_keys(j, {"kind", "d", "h"}, where);
    return WeightFunction::affine(require_number(j, "d", where),
                                  require_number(j, "h", where));
  }
  if (kind == "power") {
    reject_unknown_keys(j, {"kind", "d", "h", "alpha"}, where);
    return WeightFunction::power(require_number(j, "d", where),
                                 require_number(j, "h", where),
                                 require_number(j, "alpha", where));
  }
  if (kind == "rounded_affine") {
    reject_unknown_keys(j, {"kind", "a", "b", "c"}, where);
    return WeightFunction::rounded_affine(require_number(j, "a", where),
                                          require_number(j, "b", where),
                                          require_number(j, "c", where));
  }
  fail(where, "unknown kind \"" + kind + "\"");
}

json parse_text(const std::string& text, const std::string& where) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(where, "malformed JSON");
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << text;
}

}  // namespace

Instance parse_instance_json(const std::string& text) {
  const json j = parse_text(text, "instance");
  if (!j.is_object()) fail("instance", "top level must be an object");
  reject_unknown_keys(j, {"dim", "norm", "weight", "sources", "sink"},
                      "instance");

  const json& jdim = require_key(j, "dim", "instance");
  if (!jdim.is_number_integer() || jdim.get<int>() < 2)
    fail("instance", "key \"dim\" must be an integer >= 2");
  const int dim = jdim.get<int>();

  const NormSpace space = parse_norm(require_key(j, "norm", "instance"), dim);
  const WeightFunction weight = parse_weight(require_key(j, "weight", "instance"));

  const json& jsrc = require_key(j, "sources", "instance");
  if (!jsrc.is_array() || jsrc.empty())
    fail("instance", "key \"sources\" must be a nonempty array");
  std::vector<Source> sources;
  for (size_t i = 0; i < jsrc.size(); ++i) {
    const std::string where = "instance.sources[" + std::to_string(i) + "]";
    const json& s = jsrc[i];
    if (!s.is_object()) fail(where, "must be an object");
    reject_unknown_keys(s, {"point", "tonnage"}, where);
    Vec point = parse_point(require_key(s, "point", where), dim, where);
    const double tonnage = require_number(s, "tonnage", where);
    if (!(tonnage > 0)) fail(where, "tonnage must be > 0");
    sources.push_back({std::move(point), tonnage});
  }

  Vec sink = parse_point(require_key(j, "sink", "instance"), dim, "instance.sink");
  return Instance(std::move(sources), std::move(sink), space, weight);
}

Instance load_instance(const std::string& path) {
  return parse_instance_json(read_file(path));
}

std::string instance_to_json(const Instance& inst) {
  std::string s = "{\n";
  s += "  \"dim\": " + std::to_string(inst.space().dim()) + ",\n";
  if (inst.space().kind() == NormKind::Euclidean)
    s += "  \"norm\": {\"kind\": \"euclidean\"},\n";
  else
    s += "  \"norm\": {\"kind\": \"p\", \"p\": " + num(inst.space().exponent()) +
         "},\n";
  const auto& w = inst.weight();
  switch (w.kind()) {
    case WeightKind::Constant:
      s += "  \"weight\": {\"kind\": \"constant\", \"d\": " + num(w.d()) + "},\n";
      break;
    case WeightKind::Affine:
      s += "  \"weight\": {\"kind\": \"affine\", \"d\": " + num(w.d()) +
           ", \"h\": " + num(w.h()) + "},\n";
      break;
    case WeightKind::Power:
      s += "  \"weight\": {\"kind\": \"power\", \"d\": " + num(w.d()) +
           ", \"h\": " + num(w.h()) + ", \"alpha\": " + num(w.alpha()) + "},\n";
      break;
    case WeightKind::RoundedAffine:
      s += "  \"weight\": {\"kind\": \"rounded_affine\", \"a\": " + num(w.a()) +
           ", \"b\": " + num(w.b()) + ", \"c\": " + num(w.c()) + "},\n";
      break;
  }
  s += "  \"sources\": [\n";
  for (int i = 0; i < inst.n_sources(); ++i) {
    s += "    {\"point\": " + point_json(inst.source(i).point) +
         ", \"tonnage\": " + num(inst.source(i).tonnage) + "}";
    s += (i + 1 < inst.n_sources()) ? ",\n" : "\n";
  }
  s += "  ],\n";
  s += "  \"sink\": " + point_json(inst.sink()) + "\n";
  s += "}\n";
  return s;
}

void save_instance(const Instance& inst, const std::string& path) {
  write_file(path, instance_to_json(inst));
}

namespace {

std::string vertex_id(const Topology& top, int v) {
  if (top.is_sink(v)) return "q";
  if (top.is_source(v)) return "p" + std::to_string(v + 1);
  return "s" + std::to_string(v - top.sink());
}

}  // namespace

Solution make_solution(const Embedding& emb, const Certificate& cert,
                       bool converged) {
  const auto& top = emb.topology();
  Solution sol;
  sol.cost = emb.total_cost();
  sol.converged = converged;
  for (int v = 0; v < top.vertex_count(); ++v) {
    const char* kind = top.is_sink(v)     ? "sink"
                       : top.is_source(v) ? "source"
                                          : "steiner";
    sol.vertices.push_back({vertex_id(top, v), kind, emb.position(v)});
  }
  for (const auto& e : emb.edges())
    sol.edges.push_back({vertex_id(top, e.child), vertex_id(top, e.parent),
                         e.flow, e.weight, e.length});
  switch (cert.verdict) {
    case CertVerdict::Certified:
      sol.verdict = "certified";
      break;
    case CertVerdict::Violated:
      sol.verdict = "violated: " + cert.detail;
      break;
    case CertVerdict::NotApplicable:
      sol.verdict = "not_applicable: " + cert.detail;
      break;
  }
  for (const auto& star : cert.stars)
    sol.stars.push_back({vertex_id(top, star.vertex), star.balancing_residual,
                         star.min_collapsing_slack});
  return sol;
}

std::string solution_to_json(const Solution& sol) {
  std::string s = "{\n";
  s += "  \"cost\": " + num(sol.cost) + ",\n";
  s += "  \"vertices\": [\n";
  for (size_t i = 0; i < sol.vertices.size(); ++i) {
    const auto& v = sol.vertices[i];
    s += "    {\"id\": \"" + v.id + "\", \"kind\": \"" + v.kind +
         "\", \"point\": " + point_json(v.point) + "}";
    s += (i + 1 < sol.vertices.size()) ? ",\n" : "\n";
  }
  s += "  ],\n";
  s += "  \"edges\": [\n";
  for (size_t i = 0; i < sol.edges.size(); ++i) {
    const auto& e = sol.edges[i];
    s += "    {\"from\": \"" + e.from + "\", \"to\": \"" + e.to +
         "\", \"flow\": " + num(e.flow) + ", \"weight\": " + num(e.weight) +
         ", \"length\": " + num(e.length) + "}";
    s += (i + 1 < sol.edges.size()) ? ",\n" : "\n";
  }
  s += "  ],\n";
  s += "  \"certificate\": {\n";
  s += "    \"verdict\": \"" + sol.verdict + "\",\n";
  s += "    \"stars\": [\n";
  for (size_t i = 0; i < sol.stars.size(); ++i) {
    const auto& st = sol.stars[i];
    s += "      {\"vertex\": \"" + st.vertex +
         "\", \"balancing_residual\": " + num(st.balancing_residual) +
         ", \"min_collapsing_slack\": " + num(st.min_collapsing_slack) + "}";
    s += (i + 1 < sol.stars.size()) ? ",\n" : "\n";
  }
  s += "    ]\n";
  s += "  },\n";
  s += "  \"converged\": " + std::string(sol.converged ? "true" : "false") +
       "\n";
  s += "}\n";
  return s;
}

Solution parse_solution_json(const std::string& text) {
  const json j = parse_text(text, "solution");
  if (!j.is_object()) fail("solution", "top level must be an object");
  reject_unknown_keys(j, {"cost", "vertices", "edges", "certificate",
                          "converged"},
                      "solution");
  Solution sol;
  sol.cost = require_number(j, "cost", "solution");
  const json& jconv = require_key(j, "converged", "solution");
  if (!jconv.is_boolean())
    fail("solution", "key \"converged\" must be a boolean");
  sol.converged = jconv.get<bool>();

  const json& jv = require_key(j, "vertices", "solution");
  if (!jv.is_array() || jv.empty())
    fail("solution", "key \"vertices\" must be a nonempty array");
  int dim = -1;
  for (size_t i = 0; i < jv.size(); ++i) {
    const std::string where = "solution.vertices[" + std::to_string(i) + "]";
    const json& v = jv[i];
    if (!v.is_object()) fail(where, "must be an object");
    reject_unknown_keys(v, {"id", "kind", "point"}, where);
    SolutionVertex out;
    out.id = require_string(v, "id", where);
    out.kind = require_string(v, "kind", where);
    if (out.kind != "source" && out.kind != "sink" && out.kind != "steiner")
      fail(where, "kind must be source, sink or steiner");
    const json& pt = require_key(v, "point", where);
    if (!pt.is_array() || pt.empty()) fail(where, "point must be an array");
    if (dim < 0) dim = static_cast<int>(pt.size());
    out.point = parse_point(pt, dim, where);
    sol.vertices.push_back(std::move(out));
  }

  const json& je = require_key(j, "edges", "solution");
  if (!je.is_array()) fail("solution", "key \"edges\" must be an array");
  for (size_t i = 0; i < je.size(); ++i) {
    const std::string where = "solution.edges[" + std::to_string(i) + "]";
    const json& e = je[i];
    if (!e.is_object()) fail(where, "must be an object");
    reject_unknown_keys(e, {"from", "to", "flow", "weight", "length"}, where);
    sol.edges.push_back({require_string(e, "from", where),
                         require_string(e, "to", where),
                         require_number(e, "flow", where),
                         require_number(e, "weight", where),
                         require_number(e, "length", where)});
  }

  const json& jc = require_key(j, "certificate", "solution");
  if (!jc.is_object()) fail("solution", "key \"certificate\" must be an object");
  reject_unknown_keys(jc, {"verdict", "stars"}, "solution.certificate");
  sol.verdict = require_string(jc, "verdict", "solution.certificate");
  const json& js = require_key(jc, "stars", "solution.certificate");
  if (!js.is_array()) fail("solution.certificate", "stars must be an array");
  for (size_t i = 0; i < js.size(); ++i) {
    const std::string where =
        "solution.certificate.stars[" + std::to_string(i) + "]";
    const json& st = js[i];
    if (!st.is_object()) fail(where, "must be an object");
    reject_unknown_keys(st, {"vertex", "balancing_residual",
                             "min_collapsing_slack"},
                        where);
    sol.stars.push_back({require_string(st, "vertex", where),
                         require_number(st, "balancing_residual", where),
                         require_number(st, "min_collapsing_slack", where)});
  }

  double edge_sum = 0;
  for (const auto& e : sol.edges) edge_sum += e.weight * e.length;
  if (std::abs(edge_sum - sol.cost) > 1e-9 * std::max(1.0, std::abs(sol.cost)))
    fail("solution", "edge costs do not sum to \"cost\"");

  return sol;
}

Solution load_solution(const std::string& path) {
  return parse_solution_json(read_file(path));
}

void save_solution(const Solution& sol, const std::string& path) {
  write_file(path, solution_to_json(sol));
}

namespace {

bool exactly_equal(const Vec& a, const Vec& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

}  // namespace

Embedding reconstruct_embedding(const Solution& sol, const Instance& inst) {
  const int n = inst.n_sources();
  std::map<std::string, int> index;

  int n_sources = 0, n_steiner = 0, n_sinks = 0;
  for (const auto& v : sol.vertices) {
    if (v.kind == "source") ++n_sources;
    if (v.kind == "sink") ++n_sinks;
    if (v.kind == "steiner") ++n_steiner;
  }
  if (n_sources != n || n_sinks != 1)
    throw std::invalid_argument(
        "solution/instance mismatch: expected " + std::to_string(n) +
        " sources and one sink");

  // Terminal ids are positional: p1..pn in instance order, then q.
  int next_source = 0, next_steiner = 0;
  std::vector<Vec> steiner_pos(static_cast<size_t>(n_steiner));
  for (const auto& v : sol.vertices) {
    if (v.point.size() != inst.space().dim())
      throw std::invalid_argument("solution/instance mismatch: vertex " +
                                  v.id + " has wrong dimension");
    if (v.kind == "source") {
      if (v.point != inst.source(next_source).point)
        throw std::invalid_argument(
            "solution/instance mismatch: source " + v.id +
            " coordinates differ from the instance");
      index[v.id] = next_source++;
    } else if (v.kind == "sink") {
      if (v.point != inst.sink())
        throw std::invalid_argument(
            "solution/instance mismatch: sink coordinates differ");
      index[v.id] = n;
    } else {
      index[v.id] = n + 1 + next_steiner;
      steiner_pos[static_cast<size_t>(next_steiner++)] = v.point;
    }
  }
  if (index.size() != sol.vertices.size())
    throw std::invalid_argument("solution: duplicate vertex id");

  std::vector<int> parent(sol.vertices.size(), -2);
  parent[static_cast<size_t>(n)] = -1;
  for (const auto& e : sol.edges) {
    if (!index.contains(e.from) || !index.contains(e.to))
      throw std::invalid_argument("solution: edge references unknown vertex \"" +
                                  (index.contains(e.from) ? e.to : e.from) +
                                  "\"");
    const int c = index.at(e.from);
    if (c == n) throw std::invalid_argument("solution: sink has an outgoing edge");
    if (parent[static_cast<size_t>(c)] != -2)
      throw std::invalid_argument("solution: vertex \"" + e.from +
                                  "\" has two outgoing edges");
    parent[static_cast<size_t>(c)] = index.at(e.to);
  }
  for (size_t v = 0; v < parent.size(); ++v)
    if (parent[v] == -2)
      throw std::invalid_argument("solution: vertex without an outgoing edge");

  Topology top(n, n_steiner, std::move(parent));
  Embedding emb(inst, std::move(top), std::move(steiner_pos));

  // Flows, weights and lengths in the file must agree with the rebuilt tree.
  for (const auto& e : sol.edges) {
    const int c = index.at(e.from);
    const auto it = std::find_if(
        emb.edges().begin(), emb.edges().end(),
        [&](const EdgeData& d) { return d.child == c; });
    const double rel = std::max(1.0, std::abs(it->flow));
    if (std::abs(it->flow - e.flow) > 1e-9 * rel ||
        std::abs(it->weight - e.weight) > 1e-9 * std::max(1.0, it->weight) ||
        std::abs(it->length - e.length) > 1e-9 * std::max(1.0, it->length))
      throw std::invalid_argument(
          "solution/instance mismatch: edge " + e.from + " -> " + e.to +
          " flow/weight/length differ from the derived values");
  }
  return emb;
}

}  // namespace gilbert
