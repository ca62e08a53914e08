#ifndef QGS_GRAPH_HPP_
#define QGS_GRAPH_HPP_

#include "qgs/types.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qgs {

struct Vertex {
  std::string id;
  /// Coupling constant a_m of the delta-type condition sum of inward derivatives = a_m f(V_m).
  Complex coupling{0.0, 0.0};

  bool operator==(const Vertex&) const = default;
};

struct Edge {
  std::string id;
  std::string from;
  std::string to;
  double length = 1.0;

  bool is_loop() const { return from == to; }
  bool operator==(const Edge&) const = default;
};

/// Finite metric graph with compact edges, delta-type vertex couplings and
/// semi-infinite leads attached to vertices.
///
/// Vertices are kept sorted by id; the position of a vertex in that order is its
/// row in every vertex-indexed matrix. Edges are kept in canonical order
/// (from, to, length, id). External status is derived from the lead list.
class MetricGraph {
 public:
  MetricGraph() = default;
  MetricGraph(std::vector<Vertex> vertices, std::vector<Edge> edges,
              std::vector<std::string> leads);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& leads() const { return leads_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t lead_count() const { return leads_.size(); }

  std::optional<std::size_t> find_vertex(std::string_view id) const;
  /// Throws UnknownVertex.
  std::size_t vertex_index(std::string_view id) const;
  std::optional<std::size_t> find_edge(std::string_view id) const;
  /// Throws UnknownEdge.
  const Edge& edge(std::string_view id) const;

  /// Number of leads attached to vertex i.
  int lead_multiplicity(std::size_t i) const;
  bool is_external(std::size_t i) const { return lead_multiplicity(i) > 0; }
  /// External vertex indices in sorted-id order.
  std::vector<std::size_t> external_indices() const;

  /// Degree in the compact part: non-loop edges once, loops twice.
  int degree(std::size_t i) const;

  std::vector<Complex> couplings() const;
  bool has_real_couplings(double tol = 0.0) const;
  double total_length() const;
  double min_length() const;

  MetricGraph with_couplings(std::span<const Complex> couplings) const;
  /// Returns a copy with lengths[i] assigned to edges()[i].
  MetricGraph with_lengths(std::span<const double> lengths) const;
  /// Returns a copy with the listed edges rescaled by factor.
  MetricGraph with_scaled_edges(std::span<const std::string> edge_ids, double factor) const;

  bool operator==(const MetricGraph&) const = default;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::string> leads_;
};

/// Diagonal coupling matrix in sorted vertex order.
struct CouplingMatrix {
  std::vector<std::string> vertex_ids;
  std::vector<Complex> diagonal;

  static CouplingMatrix from_graph(const MetricGraph& graph);
  static CouplingMatrix zero(const MetricGraph& graph);

  std::size_t size() const { return diagonal.size(); }
  bool is_real(double tol = 0.0) const;
  CMatrix as_matrix() const;
};

// ---------------------------------------------------------------------------
// Validation

enum class Severity { error, warning };

struct Issue {
  Severity severity;
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<Issue> issues;

  bool valid() const;
  std::vector<Issue> errors() const;
  std::vector<Issue> warnings() const;
  bool has(std::string_view code) const;
};

/// Checks the standing assumptions: connectivity, positive finite lengths, at most
/// one lead per vertex, unique ids, known endpoints. Warns when compact lengths
/// look rationally dependent (pairwise ratio within 1e-9 of p/q, q <= 32).
ValidationReport validate(const MetricGraph& graph);

/// Throws InvalidGraph listing every error of the report.
void require_valid(const MetricGraph& graph);

bool lengths_look_rationally_dependent(std::span<const double> lengths);

// ---------------------------------------------------------------------------
// Contraction and spanning trees

/// Glues the endpoints V, W of a non-loop edge into a vertex "(V|W)" with
/// coupling a_V + a_W. The edge disappears and every other V-W edge becomes a
/// loop of its own length. The merged vertex carries one lead if either
/// endpoint did.
MetricGraph contract(const MetricGraph& graph, std::string_view edge_id);

std::string merged_vertex_id(std::string_view first, std::string_view second);

struct SpanningTreePath {
  std::string root;
  std::string target;
  std::vector<std::string> vertices_on_path;  ///< root ... target
  std::vector<std::string> edge_ids;          ///< along the path from the root
  std::vector<double> ordered_edge_lengths;

  std::size_t vertex_count() const { return vertices_on_path.size(); }
};

/// Breadth-first spanning tree from root; among incident edges the shorter (then
/// lower id) is taken first. One path per vertex, ordered with non-decreasing
/// vertex count. Throws Disconnected.
std::vector<SpanningTreePath> spanning_tree(const MetricGraph& graph, std::string_view root);

// ---------------------------------------------------------------------------
// File format

MetricGraph parse_graph(std::string_view text);
std::string serialize_graph(const MetricGraph& graph);
MetricGraph load_graph(const std::string& path);

}  // namespace qgs

#endif  // QGS_GRAPH_HPP_
