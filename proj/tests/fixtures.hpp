#pragma once

// Small named graphs shared across the test suites.

#include <initializer_list>
#include <utility>

#include "graphgen/graph.hpp"

namespace graphgen::testing {

inline Graph from_edges(std::size_t n, std::initializer_list<std::pair<VertexId, VertexId>> edges) {
  Graph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline Graph triangle() { return from_edges(3, {{0, 1}, {0, 2}, {1, 2}}); }

inline Graph complete(std::size_t n) {
  Graph g(n);
  for (VertexId u = 0; u + 1 < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph k4_minus_edge() { return from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}); }

inline Graph path(std::size_t n) {
  Graph g(n);
  for (VertexId v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline Graph cycle(std::size_t n) {
  Graph g = path(n);
  g.add_edge(static_cast<VertexId>(n - 1), 0);
  return g;
}

// Center vertex 0, leaves 1..n.
inline Graph star(std::size_t leaves) {
  Graph g(leaves + 1);
  for (VertexId v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

inline Graph two_triangles() {
  return from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
}

inline Graph triangle_with_pendant() {
  return from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}});
}

inline Graph k4_with_pendant() {
  Graph g(5);
  for (VertexId u = 0; u < 4; ++u)
    for (VertexId v = u + 1; v < 4; ++v) g.add_edge(u, v);
  g.add_edge(0, 4);
  return g;
}

}  // namespace graphgen::testing
