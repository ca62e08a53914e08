#include "qgs/random_graph.hpp"

#include <algorithm>

namespace qgs {

MetricGraph random_graph(std::mt19937_64& rng, const RandomGraphOptions& options) {
  std::uniform_int_distribution<int> n_dist(1, std::max(1, options.max_vertices));
  std::uniform_real_distribution<double> len(options.min_length, options.max_length);
  std::uniform_real_distribution<double> coupling(-options.coupling_bound, options.coupling_bound);

  while (true) {
    const int n = n_dist(rng);
    std::vector<Vertex> vertices;
    for (int i = 0; i < n; ++i)
      vertices.push_back({"V" + std::to_string(i + 1), Complex(coupling(rng), 0.0)});

    std::vector<Edge> edges;
    auto add_edge = [&](int u, int v) {
      edges.push_back({"e" + std::to_string(edges.size() + 1), vertices[static_cast<std::size_t>(u)].id,
                       vertices[static_cast<std::size_t>(v)].id, len(rng)});
    };
    for (int i = 1; i < n; ++i) add_edge(std::uniform_int_distribution<int>(0, i - 1)(rng), i);
    const int tree = n - 1;
    const int max_extra = std::max(0, options.max_edges - tree);
    const int extra = std::uniform_int_distribution<int>(tree == 0 ? 1 : 0, max_extra)(rng);
    for (int i = 0; i < extra; ++i) {
      const int u = std::uniform_int_distribution<int>(0, n - 1)(rng);
      int v = std::uniform_int_distribution<int>(0, n - 1)(rng);
      if (u == v && !options.loops) continue;
      add_edge(u, v);
    }
    if (edges.empty()) continue;

    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::shuffle(order.begin(), order.end(), rng);
    const int lead_count =
        std::uniform_int_distribution<int>(std::min(options.min_leads, n), n)(rng);
    std::vector<std::string> leads;
    for (int i = 0; i < lead_count; ++i)
      leads.push_back(vertices[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])].id);

    MetricGraph g(std::move(vertices), std::move(edges), std::move(leads));
    if (options.independent_lengths) {
      std::vector<double> lengths;
      for (const auto& e : g.edges()) lengths.push_back(e.length);
      if (lengths_look_rationally_dependent(lengths)) continue;
    }
    return g;
  }
}

}  // namespace qgs
