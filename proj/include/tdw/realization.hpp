#pragma once

#include <vector>

#include "tdw/complex.hpp"
#include "tdw/metric_graph.hpp"

namespace tdw {

// Exact translation of a metrized complex into a metric graph with
// identical divisor theory. Each genus-1 component C_v turns into a
// circle of circumference 1 whose points are the points of C_v; the
// incident edge ends attach at the node coordinates. Rational functions
// on the complex (integer-slope graph part plus principal component
// parts) correspond bijectively to integer-slope functions on the
// realized graph, so linear equivalence, effectivity, reduced divisors
// and rank all transfer verbatim.
class Realization {
 public:
  explicit Realization(const MetrizedComplex& c);

  const MetrizedComplex& complex() const { return *complex_; }
  const MetricGraph& graph() const { return graph_; }

  MgPoint to_graph(const Point& p) const;
  MgDivisor to_graph(const Divisor& d) const;
  Point to_complex(const MgPoint& p) const;
  Divisor to_complex(const MgDivisor& d) const;

  // mg vertex representing a genus-0 vertex
  int plain_vertex(int v) const { return plain_vertex_[v]; }

 private:
  struct EdgeOrigin {
    bool is_arc = false;
    int id = -1;        // complex edge id, or vertex id for arcs
    Rational from;      // arc start coordinate (arcs only)
  };
  struct VertexOrigin {
    int v = -1;
    bool on_circle = false;
    Rational coord;
  };

  const MetrizedComplex* complex_;
  MetricGraph graph_;
  std::vector<int> plain_vertex_;                    // genus-0 vertex -> mg vertex
  std::vector<std::vector<int>> node_vertex_;        // genus-1 vertex -> mg vertex per sorted node
  std::vector<std::vector<int>> arc_edge_;           // genus-1 vertex -> mg arc ids
  std::vector<int> realized_edge_;                   // complex edge -> mg edge
  std::vector<EdgeOrigin> edge_origin_;              // per mg edge
  std::vector<VertexOrigin> vertex_origin_;          // per mg vertex
};

}  // namespace tdw
