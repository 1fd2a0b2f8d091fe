#include "tdw/complex.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "tdw/errors.hpp"

namespace tdw {

Point MetrizedComplex::base_point() const {
  if (vertices_.empty()) throw InputError("empty complex has no base point");
  if (vertices_[0].genus == 0) return Point::vertex(0);
  return Point::on_component(0, Rational(0));
}

void MetrizedComplex::validate_point(const Point& p) const {
  switch (p.kind) {
    case PointKind::Vertex:
      if (p.id < 0 || p.id >= vertex_count()) throw InputError("unknown vertex id");
      if (vertices_[p.id].genus > 0)
        throw InputError("vertex '" + vertices_[p.id].name +
                         "' has genus 1; a chip there needs a component coordinate");
      return;
    case PointKind::Edge:
      if (p.id < 0 || p.id >= edge_count()) throw InputError("unknown edge id");
      if (!(p.pos > Rational(0)) || !(p.pos < edges_[p.id].length))
        throw InputError("edge offset " + p.pos.str() + " not interior to '" +
                         edges_[p.id].name + "' (length " + edges_[p.id].length.str() + ")");
      return;
    case PointKind::Component:
      if (p.id < 0 || p.id >= vertex_count()) throw InputError("unknown vertex id");
      if (p.pos < Rational(0) || !(p.pos < Rational(1)))
        throw InputError("component coordinate must lie in [0,1)");
      return;
  }
}

void MetrizedComplex::validate_divisor(const Divisor& d) const {
  for (const auto& [p, c] : d.coeffs()) validate_point(p);
}

std::string MetrizedComplex::point_str(const Point& p) const {
  switch (p.kind) {
    case PointKind::Vertex:
      return vertices_[p.id].name;
    case PointKind::Edge:
      return edges_[p.id].name + "(" + p.pos.str() + ")";
    case PointKind::Component:
      return vertices_[p.id].name + "[" + p.pos.str() + "]";
  }
  return "?";
}

std::string MetrizedComplex::divisor_str(const Divisor& d) const {
  if (d.empty()) return "0";
  std::string out;
  for (const auto& [p, c] : d.coeffs()) {
    if (!out.empty()) out += " + ";
    if (c != 1) out += std::to_string(c) + "*";
    out += point_str(p);
  }
  return out;
}

MetrizedComplex build_complex(std::vector<VertexData> vertices, std::vector<EdgeData> edges) {
  MetrizedComplex c;
  if (vertices.empty()) throw InputError("complex needs at least one vertex");
  for (const auto& v : vertices)
    if (v.genus != 0 && v.genus != 1)
      throw InputError("vertex '" + v.name + "' has genus " + std::to_string(v.genus) +
                       "; only genus 0 and 1 components are supported");
  int n = static_cast<int>(vertices.size());
  for (const auto& e : edges) {
    if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n)
      throw InputError("edge '" + e.name + "' references an unknown vertex");
    if (!(e.length > Rational(0)))
      throw InputError("edge '" + e.name + "' has nonpositive length " + e.length.str());
    auto check_end = [&](int v, const std::optional<Rational>& node) {
      if (vertices[v].genus == 1) {
        if (!node)
          throw InputError("edge '" + e.name + "' meets genus-1 vertex '" + vertices[v].name +
                           "' without a node coordinate");
        if (*node < Rational(0) || !(*node < Rational(1)))
          throw InputError("node coordinate of edge '" + e.name + "' must lie in [0,1)");
      }
    };
    check_end(e.a, e.node_a);
    check_end(e.b, e.node_b);
  }

  // connectivity
  std::vector<int> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
  int merges = 0;
  for (const auto& e : edges) {
    int ra = find(e.a), rb = find(e.b);
    if (ra != rb) {
      comp[ra] = rb;
      ++merges;
    }
  }
  if (merges != n - 1) throw InputError("the underlying graph is not connected");

  // distinct node coordinates per genus-1 component
  c.nodes_.assign(n, {});
  for (const auto& e : edges) {
    if (vertices[e.a].genus == 1) c.nodes_[e.a].push_back(e.node_a->mod1());
    if (vertices[e.b].genus == 1) c.nodes_[e.b].push_back(e.node_b->mod1());
  }
  for (int v = 0; v < n; ++v) {
    auto& ns = c.nodes_[v];
    std::sort(ns.begin(), ns.end());
    if (std::adjacent_find(ns.begin(), ns.end()) != ns.end())
      throw InputError("duplicate node coordinate on component of vertex '" + vertices[v].name +
                       "'");
  }

  c.vertices_ = std::move(vertices);
  c.edges_ = std::move(edges);
  c.betti_ = static_cast<int>(c.edges_.size()) - n + 1;
  c.genus_ = c.betti_;
  for (const auto& v : c.vertices_) c.genus_ += v.genus;
  return c;
}

int genus(const MetrizedComplex& c) { return c.genus(); }

Divisor canonical_divisor(const MetrizedComplex& c) {
  std::vector<long long> deg(c.vertex_count(), 0);
  for (const auto& e : c.edges()) {
    deg[e.a] += 1;
    deg[e.b] += 1;
  }
  Divisor k;
  for (int v = 0; v < c.vertex_count(); ++v) {
    if (c.genus_of_vertex(v) == 0) {
      k.add(Point::vertex(v), deg[v] - 2);
    } else {
      // trivial component canonical class: take the sum of the nodes,
      // which also accounts for deg(v) - 2 + 2g_v = deg(v) chips
      for (const Rational& coord : c.nodes_of(v)) k.add(Point::on_component(v, coord), 1);
    }
  }
  return k;
}

Point Refinement::map_point(const Point& p) const {
  if (p.kind != PointKind::Edge) return p;
  const auto& cs = cuts[p.id];
  Rational prev = 0;
  std::size_t i = 0;
  for (; i < cs.size(); ++i) {
    if (p.pos == cs[i]) return Point::vertex(cut_vertices[p.id][i]);
    if (p.pos < cs[i]) break;
    prev = cs[i];
  }
  return Point::on_edge(sub_edges[p.id][i], p.pos - prev);
}

Divisor Refinement::map_divisor(const Divisor& d) const {
  Divisor out;
  for (const auto& [p, c] : d.coeffs()) out.add(map_point(p), c);
  return out;
}

Refinement refine_with_map(const MetrizedComplex& c, const std::vector<Point>& points) {
  Refinement r;
  r.cuts.assign(c.edge_count(), {});
  r.cut_vertices.assign(c.edge_count(), {});
  r.sub_edges.assign(c.edge_count(), {});
  for (const auto& p : points) {
    c.validate_point(p);
    if (p.kind != PointKind::Edge)
      throw InputError("refinement points must be interior edge points");
    r.cuts[p.id].push_back(p.pos);
  }
  for (auto& cs : r.cuts) {
    std::sort(cs.begin(), cs.end());
    if (std::adjacent_find(cs.begin(), cs.end()) != cs.end())
      throw InputError("duplicate refinement point");
  }

  std::vector<VertexData> vs = c.vertices();
  std::vector<EdgeData> es;
  for (int e = 0; e < c.edge_count(); ++e) {
    const EdgeData& src = c.edges()[e];
    int prev_vertex = src.a;
    std::optional<Rational> prev_node = src.node_a;
    Rational prev = 0;
    for (std::size_t i = 0; i < r.cuts[e].size(); ++i) {
      const Rational& t = r.cuts[e][i];
      int nv = static_cast<int>(vs.size());
      vs.push_back({src.name + "." + std::to_string(i + 1), 0});
      r.cut_vertices[e].push_back(nv);
      EdgeData sub;
      sub.name = src.name + "/" + std::to_string(i);
      sub.a = prev_vertex;
      sub.b = nv;
      sub.length = t - prev;
      sub.node_a = prev_node;
      r.sub_edges[e].push_back(static_cast<int>(es.size()));
      es.push_back(sub);
      prev_vertex = nv;
      prev_node.reset();
      prev = t;
    }
    EdgeData last;
    last.name = r.cuts[e].empty() ? src.name : src.name + "/" + std::to_string(r.cuts[e].size());
    last.a = prev_vertex;
    last.b = src.b;
    last.length = src.length - prev;
    last.node_a = prev_node;
    last.node_b = src.node_b;
    r.sub_edges[e].push_back(static_cast<int>(es.size()));
    es.push_back(last);
  }
  r.complex = build_complex(std::move(vs), std::move(es));
  return r;
}

MetrizedComplex refine(const MetrizedComplex& c, const std::vector<Point>& points) {
  return refine_with_map(c, points).complex;
}

}  // namespace tdw
