#pragma once

#include <map>
#include <string>
#include <vector>

#include "tdw/rational.hpp"

namespace tdw {

// Internal exact-arithmetic metric multigraph. Self-loops and parallel
// edges are allowed; offsets along an edge are measured from endpoint a.
struct MgEdge {
  int a = -1;
  int b = -1;
  Rational len;
};

struct MetricGraph {
  int vertex_count = 0;
  std::vector<MgEdge> edges;

  int add_vertex() { return vertex_count++; }
  int add_edge(int a, int b, const Rational& len) {
    edges.push_back({a, b, len});
    return static_cast<int>(edges.size()) - 1;
  }
};

// A location on a metric graph: either a vertex or an interior edge point.
struct MgPoint {
  int edge = -1;     // -1 means vertex point
  int vertex = -1;   // valid when edge < 0
  Rational offset;   // in (0, len) when edge >= 0

  static MgPoint at_vertex(int v) {
    MgPoint p;
    p.vertex = v;
    return p;
  }
  static MgPoint on_edge(int e, const Rational& t) {
    MgPoint p;
    p.edge = e;
    p.offset = t;
    return p;
  }
  bool is_vertex() const { return edge < 0; }

  friend bool operator==(const MgPoint& x, const MgPoint& y) {
    return x.edge == y.edge && x.vertex == y.vertex && x.offset == y.offset;
  }
  friend bool operator<(const MgPoint& x, const MgPoint& y) {
    if (x.is_vertex() != y.is_vertex()) return x.is_vertex();
    if (x.is_vertex()) return x.vertex < y.vertex;
    if (x.edge != y.edge) return x.edge < y.edge;
    return x.offset < y.offset;
  }
};

// Finite integer chip configuration; zero coefficients are never stored.
using MgDivisor = std::map<MgPoint, long long>;

inline void mg_add(MgDivisor& d, const MgPoint& p, long long c) {
  if (c == 0) return;
  auto it = d.find(p);
  if (it == d.end()) {
    d.emplace(p, c);
  } else {
    it->second += c;
    if (it->second == 0) d.erase(it);
  }
}

inline long long mg_deg(const MgDivisor& d) {
  long long s = 0;
  for (const auto& [p, c] : d) s += c;
  return s;
}

inline long long mg_coeff(const MgDivisor& d, const MgPoint& p) {
  auto it = d.find(p);
  return it == d.end() ? 0 : it->second;
}

// Compact byte key for memo tables; injective on divisors of one graph.
std::string mg_key(const MgDivisor& d);

// Result of splitting edges at interior points. Vertex ids of the source
// graph are preserved; cut vertices are appended after them.
struct MgRefinement {
  MetricGraph graph;
  // per source edge: sorted cut offsets, the vertex created at each cut,
  // and the k+1 sub-edge ids in order from endpoint a.
  std::vector<std::vector<Rational>> cuts;
  std::vector<std::vector<int>> cut_vertices;
  std::vector<std::vector<int>> sub_edges;
  // per refined edge: source edge and the offset of its a endpoint there.
  std::vector<int> src_edge;
  std::vector<Rational> src_from;
  // per refined vertex >= old vertex_count: its source location.
  std::vector<MgPoint> new_vertex_src;
  int old_vertex_count = 0;

  MgPoint to_refined(const MgPoint& p) const;
  MgPoint to_source(const MgPoint& p) const;
  MgDivisor to_refined(const MgDivisor& d) const;
  MgDivisor to_source(const MgDivisor& d) const;
};

// Splits the graph at the given points (vertex points are ignored).
// Duplicate or out-of-range interior points throw std::invalid_argument.
MgRefinement mg_refine(const MetricGraph& g, std::vector<MgPoint> points);

}  // namespace tdw
