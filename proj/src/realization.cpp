#include "tdw/realization.hpp"

#include <algorithm>

#include "tdw/errors.hpp"

namespace tdw {

Realization::Realization(const MetrizedComplex& c) : complex_(&c) {
  int n = c.vertex_count();
  plain_vertex_.assign(n, -1);
  node_vertex_.assign(n, {});
  arc_edge_.assign(n, {});

  for (int v = 0; v < n; ++v) {
    if (c.genus_of_vertex(v) == 0) {
      plain_vertex_[v] = graph_.add_vertex();
      vertex_origin_.push_back({v, false, Rational(0)});
      continue;
    }
    // circle of circumference 1; node coordinates become vertices
    std::vector<Rational> coords = c.nodes_of(v);
    if (coords.empty()) coords.push_back(Rational(0));  // isolated component marker
    for (const Rational& coord : coords) {
      node_vertex_[v].push_back(graph_.add_vertex());
      vertex_origin_.push_back({v, true, coord});
    }
    int k = static_cast<int>(coords.size());
    if (k == 1) {
      int ar = graph_.add_edge(node_vertex_[v][0], node_vertex_[v][0], Rational(1));
      arc_edge_[v].push_back(ar);
      edge_origin_.push_back({true, v, coords[0]});
    } else {
      for (int i = 0; i < k; ++i) {
        int j = (i + 1) % k;
        Rational len = (j == 0) ? coords[0] + Rational(1) - coords[i] : coords[j] - coords[i];
        int ar = graph_.add_edge(node_vertex_[v][i], node_vertex_[v][j], len);
        arc_edge_[v].push_back(ar);
        edge_origin_.push_back({true, v, coords[i]});
      }
    }
  }

  auto attach = [&](int v, const std::optional<Rational>& node) -> int {
    if (c.genus_of_vertex(v) == 0) return plain_vertex_[v];
    const auto& coords = c.nodes_of(v);
    Rational coord = node->mod1();
    auto it = std::lower_bound(coords.begin(), coords.end(), coord);
    return node_vertex_[v][it - coords.begin()];
  };
  for (int e = 0; e < c.edge_count(); ++e) {
    const EdgeData& ed = c.edges()[e];
    int ma = attach(ed.a, ed.node_a);
    int mb = attach(ed.b, ed.node_b);
    realized_edge_.push_back(graph_.add_edge(ma, mb, ed.length));
    edge_origin_.push_back({false, e, Rational(0)});
  }
}

MgPoint Realization::to_graph(const Point& p) const {
  const MetrizedComplex& c = *complex_;
  c.validate_point(p);
  switch (p.kind) {
    case PointKind::Vertex:
      return MgPoint::at_vertex(plain_vertex_[p.id]);
    case PointKind::Edge:
      return MgPoint::on_edge(realized_edge_[p.id], p.pos);
    case PointKind::Component: {
      int v = p.id;
      if (c.genus_of_vertex(v) == 0) return MgPoint::at_vertex(plain_vertex_[v]);
      std::vector<Rational> coords = c.nodes_of(v);
      if (coords.empty()) coords.push_back(Rational(0));
      // locate the arc [coords[i], coords[i+1]) containing the coordinate
      int k = static_cast<int>(coords.size());
      if (k == 1) {
        if (p.pos == coords[0]) return MgPoint::at_vertex(node_vertex_[v][0]);
        Rational off = (p.pos - coords[0]).mod1();
        return MgPoint::on_edge(arc_edge_[v][0], off);
      }
      for (int i = 0; i < k; ++i)
        if (p.pos == coords[i]) return MgPoint::at_vertex(node_vertex_[v][i]);
      int i = 0;
      while (i < k - 1 && !(p.pos < coords[i + 1])) ++i;
      if (p.pos < coords[0]) i = k - 1;  // wrap-around arc
      Rational off = (p.pos - coords[i]).mod1();
      return MgPoint::on_edge(arc_edge_[v][i], off);
    }
  }
  throw InputError("unknown point kind");
}

MgDivisor Realization::to_graph(const Divisor& d) const {
  MgDivisor out;
  for (const auto& [p, c] : d.coeffs()) mg_add(out, to_graph(p), c);
  return out;
}

Point Realization::to_complex(const MgPoint& p) const {
  if (p.is_vertex()) {
    const VertexOrigin& vo = vertex_origin_[p.vertex];
    if (!vo.on_circle) return Point::vertex(vo.v);
    return Point::on_component(vo.v, vo.coord);
  }
  const EdgeOrigin& eo = edge_origin_[p.edge];
  if (!eo.is_arc) return Point::on_edge(eo.id, p.offset);
  return Point::on_component(eo.id, (eo.from + p.offset).mod1());
}

Divisor Realization::to_complex(const MgDivisor& d) const {
  Divisor out;
  for (const auto& [p, c] : d) out.add(to_complex(p), c);
  return out;
}

}  // namespace tdw
