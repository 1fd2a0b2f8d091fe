#include "tdw/metric_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace tdw {

std::string mg_key(const MgDivisor& d) {
  std::string out;
  out.reserve(d.size() * 16);
  for (const auto& [p, c] : d) {
    if (p.is_vertex()) {
      out += 'v';
      out += std::to_string(p.vertex);
    } else {
      out += 'e';
      out += std::to_string(p.edge);
      out += '@';
      out += p.offset.str();
    }
    out += ':';
    out += std::to_string(c);
    out += ';';
  }
  return out;
}

MgPoint MgRefinement::to_refined(const MgPoint& p) const {
  if (p.is_vertex()) return p;  // source vertex ids are preserved
  const auto& cs = cuts[p.edge];
  std::size_t i = 0;
  Rational prev = 0;
  for (; i < cs.size(); ++i) {
    if (p.offset == cs[i]) return MgPoint::at_vertex(cut_vertices[p.edge][i]);
    if (p.offset < cs[i]) break;
    prev = cs[i];
  }
  return MgPoint::on_edge(sub_edges[p.edge][i], p.offset - prev);
}

MgPoint MgRefinement::to_source(const MgPoint& p) const {
  if (p.is_vertex()) {
    if (p.vertex < old_vertex_count) return p;
    return new_vertex_src[p.vertex - old_vertex_count];
  }
  return MgPoint::on_edge(src_edge[p.edge], src_from[p.edge] + p.offset);
}

MgDivisor MgRefinement::to_refined(const MgDivisor& d) const {
  MgDivisor out;
  for (const auto& [p, c] : d) mg_add(out, to_refined(p), c);
  return out;
}

MgDivisor MgRefinement::to_source(const MgDivisor& d) const {
  MgDivisor out;
  for (const auto& [p, c] : d) mg_add(out, to_source(p), c);
  return out;
}

MgRefinement mg_refine(const MetricGraph& g, std::vector<MgPoint> points) {
  MgRefinement r;
  r.old_vertex_count = g.vertex_count;
  r.graph.vertex_count = g.vertex_count;
  r.cuts.resize(g.edges.size());
  r.cut_vertices.resize(g.edges.size());
  r.sub_edges.resize(g.edges.size());

  for (const auto& p : points) {
    if (p.is_vertex()) continue;
    if (p.edge < 0 || p.edge >= static_cast<int>(g.edges.size()))
      throw std::invalid_argument("refinement point on unknown edge");
    if (!(p.offset > Rational(0)) || !(p.offset < g.edges[p.edge].len))
      throw std::invalid_argument("refinement point not interior to its edge");
    r.cuts[p.edge].push_back(p.offset);
  }
  for (auto& cs : r.cuts) {
    std::sort(cs.begin(), cs.end());
    if (std::adjacent_find(cs.begin(), cs.end()) != cs.end())
      throw std::invalid_argument("duplicate refinement point");
  }

  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const MgEdge& edge = g.edges[e];
    int prev_vertex = edge.a;
    Rational prev = 0;
    for (const Rational& t : r.cuts[e]) {
      int nv = r.graph.add_vertex();
      r.new_vertex_src.push_back(MgPoint::on_edge(static_cast<int>(e), t));
      r.cut_vertices[e].push_back(nv);
      int ne = r.graph.add_edge(prev_vertex, nv, t - prev);
      r.sub_edges[e].push_back(ne);
      r.src_edge.push_back(static_cast<int>(e));
      r.src_from.push_back(prev);
      prev_vertex = nv;
      prev = t;
    }
    int ne = r.graph.add_edge(prev_vertex, edge.b, edge.len - prev);
    r.sub_edges[e].push_back(ne);
    r.src_edge.push_back(static_cast<int>(e));
    r.src_from.push_back(prev);
  }
  return r;
}

}  // namespace tdw
