#ifndef QGS_RANDOM_GRAPH_HPP_
#define QGS_RANDOM_GRAPH_HPP_

#include "qgs/graph.hpp"

#include <cstdint>
#include <random>

namespace qgs {

struct RandomGraphOptions {
  int max_vertices = 5;
  int max_edges = 8;
  double min_length = 0.5;
  double max_length = 2.0;
  double coupling_bound = 2.0;  ///< couplings uniform in [-bound, bound]
  bool loops = true;
  int min_leads = 1;
  /// Redraw until the lengths pass the rational-independence heuristic.
  bool independent_lengths = true;
};

/// Connected random graph: a random spanning tree plus extra edges (parallel
/// edges and loops allowed), vertex ids V1..Vn, at most one lead per vertex.
MetricGraph random_graph(std::mt19937_64& rng, const RandomGraphOptions& options = {});

}  // namespace qgs

#endif  // QGS_RANDOM_GRAPH_HPP_
