#pragma once

#include "qgs/graph.hpp"

#include <cmath>

namespace fixtures {

inline qgs::MetricGraph four_vertex() {
  return qgs::MetricGraph({{"V1", 0.5}, {"V2", -0.25}, {"V3", 1.0}, {"V4", 0.75}},
                          {{"e1", "V1", "V2", 1.0},
                           {"e2", "V2", "V3", std::sqrt(2.0)},
                           {"e3", "V3", "V4", std::sqrt(3.0)}},
                          {"V1"});
}

inline qgs::MetricGraph triangle() {
  return qgs::MetricGraph({{"V1", 0.4}, {"V2", -1.1}, {"V3", 0.9}},
                          {{"e1", "V1", "V2", 1.0},
                           {"e2", "V2", "V3", std::sqrt(2.0)},
                           {"e3", "V3", "V1", std::sqrt(3.0) - 0.5}},
                          {"V1", "V3"});
}

inline qgs::MetricGraph loop_graph() {
  return qgs::MetricGraph({{"V1", 0.2}, {"V2", -0.6}},
                          {{"e1", "V1", "V1", 1.3}, {"e2", "V1", "V2", 0.7}}, {"V2"});
}

inline qgs::MetricGraph two_vertex() {
  return qgs::MetricGraph({{"V1", 0.3}, {"V2", -0.7}}, {{"e1", "V1", "V2", 1.0}}, {"V1"});
}

inline qgs::MetricGraph interval(double length, double a0 = 0.0, double a1 = 0.0) {
  return qgs::MetricGraph({{"A", a0}, {"B", a1}}, {{"e", "A", "B", length}}, {});
}

/// Kirchhoff star with three unit legs and Neumann ends.
inline qgs::MetricGraph star3() {
  return qgs::MetricGraph({{"C", 0.0}, {"P1", 0.0}, {"P2", 0.0}, {"P3", 0.0}},
                          {{"e1", "C", "P1", 1.0}, {"e2", "C", "P2", 1.0}, {"e3", "C", "P3", 1.0}},
                          {});
}

}  // namespace fixtures
