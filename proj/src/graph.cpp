#include "qgs/graph.hpp"

#include "qgs/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace qgs {

namespace {

bool edge_less(const Edge& a, const Edge& b) {
  return std::tie(a.from, a.to, a.length, a.id) < std::tie(b.from, b.to, b.length, b.id);
}

}  // namespace

MetricGraph::MetricGraph(std::vector<Vertex> vertices, std::vector<Edge> edges,
                         std::vector<std::string> leads)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), leads_(std::move(leads)) {
  std::stable_sort(vertices_.begin(), vertices_.end(),
                   [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  std::stable_sort(edges_.begin(), edges_.end(), edge_less);
  std::sort(leads_.begin(), leads_.end());
}

std::optional<std::size_t> MetricGraph::find_vertex(std::string_view id) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                             [](const Vertex& v, std::string_view key) { return v.id < key; });
  if (it == vertices_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::size_t MetricGraph::vertex_index(std::string_view id) const {
  auto idx = find_vertex(id);
  if (!idx) throw UnknownVertex(std::string(id));
  return *idx;
}

std::optional<std::size_t> MetricGraph::find_edge(std::string_view id) const {
  for (std::size_t p = 0; p < edges_.size(); ++p)
    if (edges_[p].id == id) return p;
  return std::nullopt;
}

const Edge& MetricGraph::edge(std::string_view id) const {
  auto idx = find_edge(id);
  if (!idx) throw UnknownEdge(std::string(id));
  return edges_[*idx];
}

int MetricGraph::lead_multiplicity(std::size_t i) const {
  const auto& id = vertices_.at(i).id;
  return static_cast<int>(std::count(leads_.begin(), leads_.end(), id));
}

std::vector<std::size_t> MetricGraph::external_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (is_external(i)) out.push_back(i);
  return out;
}

int MetricGraph::degree(std::size_t i) const {
  const auto& id = vertices_.at(i).id;
  int deg = 0;
  for (const auto& e : edges_) {
    if (e.from == id) ++deg;
    if (e.to == id) ++deg;
  }
  return deg;
}

std::vector<Complex> MetricGraph::couplings() const {
  std::vector<Complex> out;
  out.reserve(vertices_.size());
  for (const auto& v : vertices_) out.push_back(v.coupling);
  return out;
}

bool MetricGraph::has_real_couplings(double tol) const {
  return std::all_of(vertices_.begin(), vertices_.end(),
                     [tol](const Vertex& v) { return std::abs(v.coupling.imag()) <= tol; });
}

double MetricGraph::total_length() const {
  double sum = 0.0;
  for (const auto& e : edges_) sum += e.length;
  return sum;
}

double MetricGraph::min_length() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& e : edges_) m = std::min(m, e.length);
  return m;
}

MetricGraph MetricGraph::with_couplings(std::span<const Complex> couplings) const {
  if (couplings.size() != vertices_.size())
    throw InputError("expected " + std::to_string(vertices_.size()) + " couplings, got " +
                     std::to_string(couplings.size()));
  MetricGraph out = *this;
  for (std::size_t i = 0; i < couplings.size(); ++i) out.vertices_[i].coupling = couplings[i];
  return out;
}

MetricGraph MetricGraph::with_lengths(std::span<const double> lengths) const {
  if (lengths.size() != edges_.size())
    throw InputError("expected " + std::to_string(edges_.size()) + " lengths, got " +
                     std::to_string(lengths.size()));
  auto edges = edges_;
  for (std::size_t p = 0; p < lengths.size(); ++p) edges[p].length = lengths[p];
  return MetricGraph(vertices_, std::move(edges), leads_);
}

MetricGraph MetricGraph::with_scaled_edges(std::span<const std::string> edge_ids,
                                           double factor) const {
  auto edges = edges_;
  for (const auto& id : edge_ids) {
    auto idx = find_edge(id);
    if (!idx) throw UnknownEdge(id);
    edges[*idx].length *= factor;
  }
  return MetricGraph(vertices_, std::move(edges), leads_);
}

// ---------------------------------------------------------------------------

CouplingMatrix CouplingMatrix::from_graph(const MetricGraph& graph) {
  CouplingMatrix out;
  for (const auto& v : graph.vertices()) {
    out.vertex_ids.push_back(v.id);
    out.diagonal.push_back(v.coupling);
  }
  return out;
}

CouplingMatrix CouplingMatrix::zero(const MetricGraph& graph) {
  auto out = from_graph(graph);
  std::fill(out.diagonal.begin(), out.diagonal.end(), Complex{});
  return out;
}

bool CouplingMatrix::is_real(double tol) const {
  return std::all_of(diagonal.begin(), diagonal.end(),
                     [tol](Complex a) { return std::abs(a.imag()) <= tol; });
}

CMatrix CouplingMatrix::as_matrix() const {
  CMatrix out = CMatrix::Zero(size(), size());
  for (std::size_t i = 0; i < size(); ++i) out(i, i) = diagonal[i];
  return out;
}

// ---------------------------------------------------------------------------

bool ValidationReport::valid() const {
  return std::none_of(issues.begin(), issues.end(),
                      [](const Issue& i) { return i.severity == Severity::error; });
}

std::vector<Issue> ValidationReport::errors() const {
  std::vector<Issue> out;
  for (const auto& i : issues)
    if (i.severity == Severity::error) out.push_back(i);
  return out;
}

std::vector<Issue> ValidationReport::warnings() const {
  std::vector<Issue> out;
  for (const auto& i : issues)
    if (i.severity == Severity::warning) out.push_back(i);
  return out;
}

bool ValidationReport::has(std::string_view code) const {
  return std::any_of(issues.begin(), issues.end(),
                     [code](const Issue& i) { return i.code == code; });
}

bool lengths_look_rationally_dependent(std::span<const double> lengths) {
  constexpr int kMaxDenominator = 32;
  constexpr double kTol = 1e-9;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    for (std::size_t j = i + 1; j < lengths.size(); ++j) {
      const double r = lengths[i] / lengths[j];
      for (int q = 1; q <= kMaxDenominator; ++q) {
        const double p = std::round(r * q);
        if (p >= 1.0 && std::abs(r - p / q) < kTol) return true;
      }
    }
  }
  return false;
}

ValidationReport validate(const MetricGraph& graph) {
  ValidationReport report;
  auto error = [&](std::string code, std::string message) {
    report.issues.push_back({Severity::error, std::move(code), std::move(message)});
  };

  const auto& vertices = graph.vertices();
  if (vertices.empty()) error("empty", "graph has no vertices");

  for (std::size_t i = 1; i < vertices.size(); ++i)
    if (vertices[i].id == vertices[i - 1].id)
      error("duplicate-vertex", "duplicate vertex id '" + vertices[i].id + "'");

  std::set<std::string> edge_ids;
  for (const auto& e : graph.edges()) {
    if (!edge_ids.insert(e.id).second) error("duplicate-edge", "duplicate edge id '" + e.id + "'");
    if (!(e.length > 0.0) || !std::isfinite(e.length))
      error("non-positive-length", "edge '" + e.id + "' has non-positive length");
    if (!graph.find_vertex(e.from) || !graph.find_vertex(e.to))
      error("unknown-endpoint", "edge '" + e.id + "' references an unknown vertex");
  }

  std::map<std::string, int> lead_count;
  for (const auto& id : graph.leads()) {
    if (!graph.find_vertex(id)) error("unknown-lead", "lead at unknown vertex '" + id + "'");
    ++lead_count[id];
  }
  for (const auto& [id, count] : lead_count)
    if (count > 1) error("multiple-leads", "vertex '" + id + "' carries multiple leads");

  for (const auto& v : vertices)
    if (!std::isfinite(v.coupling.real()) || !std::isfinite(v.coupling.imag()))
      error("non-finite-coupling", "vertex '" + v.id + "' has a non-finite coupling");

  // Connectivity by union-find over the compact edges.
  if (!vertices.empty()) {
    std::vector<std::size_t> parent(vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& e : graph.edges()) {
      auto a = graph.find_vertex(e.from), b = graph.find_vertex(e.to);
      if (a && b) parent[find(*a)] = find(*b);
    }
    const auto root = find(0);
    for (std::size_t i = 1; i < vertices.size(); ++i) {
      if (find(i) != root) {
        error("disconnected", "graph is not connected");
        break;
      }
    }
  }

  std::vector<double> lengths;
  for (const auto& e : graph.edges()) lengths.push_back(e.length);
  if (lengths_look_rationally_dependent(lengths))
    report.issues.push_back({Severity::warning, "rational-dependence",
                             "compact edge lengths look rationally dependent"});
  return report;
}

void require_valid(const MetricGraph& graph) {
  const auto report = validate(graph);
  if (report.valid()) return;
  std::string message = "invalid graph:";
  for (const auto& issue : report.errors()) message += " " + issue.message + ";";
  throw InvalidGraph(message);
}

// ---------------------------------------------------------------------------

std::string merged_vertex_id(std::string_view first, std::string_view second) {
  return "(" + std::string(first) + "|" + std::string(second) + ")";
}

MetricGraph contract(const MetricGraph& graph, std::string_view edge_id) {
  const Edge& e = graph.edge(edge_id);
  if (e.is_loop()) throw LoopContraction(e.id);

  const std::size_t vi = graph.vertex_index(e.from);
  const std::size_t wi = graph.vertex_index(e.to);
  const std::string merged = merged_vertex_id(e.from, e.to);
  auto rename = [&](const std::string& id) {
    return (id == e.from || id == e.to) ? merged : id;
  };

  std::vector<Vertex> vertices;
  for (std::size_t i = 0; i < graph.vertex_count(); ++i)
    if (i != vi && i != wi) vertices.push_back(graph.vertices()[i]);
  vertices.push_back(
      {merged, graph.vertices()[vi].coupling + graph.vertices()[wi].coupling});

  std::vector<Edge> edges;
  for (const auto& other : graph.edges()) {
    if (other.id == e.id) continue;
    edges.push_back({other.id, rename(other.from), rename(other.to), other.length});
  }

  std::vector<std::string> leads;
  bool merged_external = false;
  for (const auto& id : graph.leads()) {
    if (id == e.from || id == e.to)
      merged_external = true;
    else
      leads.push_back(id);
  }
  if (merged_external) leads.push_back(merged);
  return MetricGraph(std::move(vertices), std::move(edges), std::move(leads));
}

std::vector<SpanningTreePath> spanning_tree(const MetricGraph& graph, std::string_view root) {
  const std::size_t n = graph.vertex_count();
  const std::size_t r = graph.vertex_index(root);

  // Incident non-loop edges per vertex, ordered by (length, id).
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t p = 0; p < graph.edge_count(); ++p) {
    const auto& e = graph.edges()[p];
    if (e.is_loop()) continue;
    incident[graph.vertex_index(e.from)].push_back(p);
    incident[graph.vertex_index(e.to)].push_back(p);
  }
  for (auto& list : incident) {
    std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
      const auto& ea = graph.edges()[a];
      const auto& eb = graph.edges()[b];
      return std::tie(ea.length, ea.id) < std::tie(eb.length, eb.id);
    });
  }

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(n, kNone), parent_edge(n, kNone), order;
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{r};
  seen[r] = true;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    order.push_back(u);
    for (auto p : incident[u]) {
      const auto& e = graph.edges()[p];
      const auto other = graph.vertex_index(e.from == graph.vertices()[u].id ? e.to : e.from);
      if (seen[other]) continue;
      seen[other] = true;
      parent[other] = u;
      parent_edge[other] = p;
      queue.push_back(other);
    }
  }
  if (order.size() != n)
    throw Disconnected("graph is not connected: spanning tree reaches " +
                       std::to_string(order.size()) + " of " + std::to_string(n) + " vertices");

  std::vector<SpanningTreePath> paths;
  paths.reserve(n);
  for (auto v : order) {
    SpanningTreePath path;
    path.root = graph.vertices()[r].id;
    path.target = graph.vertices()[v].id;
    std::vector<std::size_t> chain;
    for (auto x = v; x != kNone; x = parent[x]) chain.push_back(x);
    std::reverse(chain.begin(), chain.end());
    for (std::size_t j = 0; j < chain.size(); ++j) {
      path.vertices_on_path.push_back(graph.vertices()[chain[j]].id);
      if (j > 0) {
        const auto& e = graph.edges()[parent_edge[chain[j]]];
        path.edge_ids.push_back(e.id);
        path.ordered_edge_lengths.push_back(e.length);
      }
    }
    paths.push_back(std::move(path));
  }
  // BFS order already has non-decreasing depth.
  return paths;
}

// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

const json& require_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError("expected an object", 0, where);
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing \"") + key + "\"", 0, where + "/" + key);
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  const auto& v = require_field(obj, key, where);
  if (!v.is_string()) throw ParseError("expected a string", 0, where + "/" + key);
  return v.get<std::string>();
}

Complex parse_coupling(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ParseError("coupling must be [re, im] or a number", 0, where);
}

}  // namespace

MetricGraph parse_graph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), line_of(text, e.byte > 0 ? e.byte - 1 : 0), "");
  }
  if (!doc.is_object()) throw ParseError("top level must be an object", 1, "");

  std::vector<Vertex> vertices;
  const auto& vs = require_field(doc, "vertices", "");
  if (!vs.is_array()) throw ParseError("expected an array", 0, "/vertices");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string where = "/vertices/" + std::to_string(i);
    Vertex v;
    v.id = require_string(vs[i], "id", where);
    if (auto it = vs[i].find("coupling"); it != vs[i].end())
      v.coupling = parse_coupling(*it, where + "/coupling");
    vertices.push_back(std::move(v));
  }

  std::vector<Edge> edges;
  if (auto it = doc.find("edges"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("expected an array", 0, "/edges");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string where = "/edges/" + std::to_string(i);
      const auto& obj = (*it)[i];
      Edge e;
      e.from = require_string(obj, "from", where);
      e.to = require_string(obj, "to", where);
      const auto& len = require_field(obj, "length", where);
      if (!len.is_number()) throw ParseError("expected a number", 0, where + "/length");
      e.length = len.get<double>();
      if (auto id = obj.find("id"); id != obj.end()) {
        if (!id->is_string()) throw ParseError("expected a string", 0, where + "/id");
        e.id = id->get<std::string>();
      } else {
        e.id = "e" + std::to_string(i + 1);
      }
      edges.push_back(std::move(e));
    }
  }

  std::vector<std::string> leads;
  if (auto it = doc.find("leads"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("expected an array", 0, "/leads");
    for (std::size_t i = 0; i < it->size(); ++i) {
      if (!(*it)[i].is_string())
        throw ParseError("expected a string", 0, "/leads/" + std::to_string(i));
      leads.push_back((*it)[i].get<std::string>());
    }
  }
  return MetricGraph(std::move(vertices), std::move(edges), std::move(leads));
}

std::string serialize_graph(const MetricGraph& graph) {
  nlohmann::ordered_json doc;
  doc["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : graph.vertices()) {
    nlohmann::ordered_json obj;
    obj["id"] = v.id;
    obj["coupling"] = {v.coupling.real(), v.coupling.imag()};
    doc["vertices"].push_back(obj);
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : graph.edges()) {
    nlohmann::ordered_json obj;
    obj["id"] = e.id;
    obj["from"] = e.from;
    obj["to"] = e.to;
    obj["length"] = e.length;
    doc["edges"].push_back(obj);
  }
  doc["leads"] = graph.leads();
  return doc.dump(2) + "\n";
}

MetricGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_graph(buffer.str());
}

}  // namespace qgs
