#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tdw/rational.hpp"

namespace tdw {

// A location on a metrized complex.
//   Vertex    — a genus-0 vertex (all points of a rational component are
//               equivalent, so the vertex itself is the canonical label).
//   Edge      — an interior point of an edge, offset from the edge's
//               first endpoint, strictly inside (0, length).
//   Component — a point of the component curve C_v at vertex v, given by
//               a circle coordinate in [0, 1). On genus-0 vertices the
//               coordinate is only a label.
enum class PointKind { Vertex, Edge, Component };

struct Point {
  PointKind kind = PointKind::Vertex;
  int id = -1;       // vertex id or edge id
  Rational pos;      // offset or circle coordinate

  static Point vertex(int v) { return {PointKind::Vertex, v, Rational(0)}; }
  static Point on_edge(int e, const Rational& off) { return {PointKind::Edge, e, off}; }
  static Point on_component(int v, const Rational& coord) {
    return {PointKind::Component, v, coord.mod1()};
  }

  friend bool operator==(const Point& a, const Point& b) {
    return a.kind == b.kind && a.id == b.id && a.pos == b.pos;
  }
  friend bool operator<(const Point& a, const Point& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    if (a.id != b.id) return a.id < b.id;
    return a.pos < b.pos;
  }
};

// Finite integer-valued chip configuration. Zero coefficients are never
// stored, so two divisors are equal iff their maps are identical.
class Divisor {
 public:
  Divisor() = default;

  void add(const Point& p, long long c) {
    if (c == 0) return;
    auto it = coeffs_.find(p);
    if (it == coeffs_.end()) coeffs_.emplace(p, c);
    else if ((it->second += c) == 0) coeffs_.erase(it);
  }
  long long coeff(const Point& p) const {
    auto it = coeffs_.find(p);
    return it == coeffs_.end() ? 0 : it->second;
  }
  long long degree() const {
    long long s = 0;
    for (const auto& [p, c] : coeffs_) s += c;
    return s;
  }
  bool effective() const {
    for (const auto& [p, c] : coeffs_)
      if (c < 0) return false;
    return true;
  }
  bool empty() const { return coeffs_.empty(); }
  std::size_t support_size() const { return coeffs_.size(); }
  const std::map<Point, long long>& coeffs() const { return coeffs_; }

  Divisor positive_part() const {
    Divisor d;
    for (const auto& [p, c] : coeffs_)
      if (c > 0) d.add(p, c);
    return d;
  }
  Divisor negative_part() const {  // returned with positive coefficients
    Divisor d;
    for (const auto& [p, c] : coeffs_)
      if (c < 0) d.add(p, -c);
    return d;
  }

  friend Divisor operator+(const Divisor& a, const Divisor& b) {
    Divisor d = a;
    for (const auto& [p, c] : b.coeffs_) d.add(p, c);
    return d;
  }
  friend Divisor operator-(const Divisor& a, const Divisor& b) {
    Divisor d = a;
    for (const auto& [p, c] : b.coeffs_) d.add(p, -c);
    return d;
  }
  friend Divisor operator*(long long k, const Divisor& a) {
    Divisor d;
    if (k != 0)
      for (const auto& [p, c] : a.coeffs_) d.add(p, k * c);
    return d;
  }
  friend bool operator==(const Divisor& a, const Divisor& b) { return a.coeffs_ == b.coeffs_; }

  static Divisor single(const Point& p, long long c = 1) {
    Divisor d;
    d.add(p, c);
    return d;
  }

 private:
  std::map<Point, long long> coeffs_;
};

struct VertexData {
  std::string name;
  int genus = 0;  // 0 or 1
};

struct EdgeData {
  std::string name;
  int a = -1;
  int b = -1;
  Rational length;
  // Circle coordinate of the node where the edge end attaches, present
  // exactly when the endpoint has genus 1.
  std::optional<Rational> node_a;
  std::optional<Rational> node_b;
};

// A metric graph with a genus-0 or genus-1 component at every vertex.
// Immutable after construction; build through build_complex.
class MetrizedComplex {
 public:
  const std::vector<VertexData>& vertices() const { return vertices_; }
  const std::vector<EdgeData>& edges() const { return edges_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int genus_of_vertex(int v) const { return vertices_[v].genus; }

  // First Betti number of the underlying graph.
  int betti() const { return betti_; }
  // Total genus g = h + sum of component genera.
  int genus() const { return genus_; }

  // Node coordinates on the component of a genus-1 vertex, sorted.
  const std::vector<Rational>& nodes_of(int v) const { return nodes_[v]; }

  // Global base point: the first vertex; on a genus-1 vertex the circle
  // point at coordinate 0.
  Point base_point() const;

  // Throws InputError unless the point refers to existing ids, offsets
  // are interior, and chips on genus-1 components carry a coordinate.
  void validate_point(const Point& p) const;
  void validate_divisor(const Divisor& d) const;

  std::string point_str(const Point& p) const;
  std::string divisor_str(const Divisor& d) const;

  friend MetrizedComplex build_complex(std::vector<VertexData> vertices,
                                       std::vector<EdgeData> edges);

 private:
  std::vector<VertexData> vertices_;
  std::vector<EdgeData> edges_;
  std::vector<std::vector<Rational>> nodes_;
  int betti_ = 0;
  int genus_ = 0;
};

// Validates and assembles a complex: connectivity, positive lengths,
// genera within {0, 1}, node coordinates present exactly on genus-1
// ends and pairwise distinct per component.
MetrizedComplex build_complex(std::vector<VertexData> vertices, std::vector<EdgeData> edges);

int genus(const MetrizedComplex& c);

// Canonical representative: deg(v) - 2 chips at each genus-0 vertex and
// one chip at every node of each genus-1 component. Total degree 2g - 2.
Divisor canonical_divisor(const MetrizedComplex& c);

// Model refinement: the listed interior edge points become new genus-0
// vertices. Divisor theory is unchanged; map_point carries locations of
// the source complex onto the refined one.
struct Refinement {
  MetrizedComplex complex;
  Point map_point(const Point& p) const;
  Divisor map_divisor(const Divisor& d) const;

  // per source edge: sorted cut offsets, ids of the created vertices,
  // and the resulting sub-edge ids in order from the first endpoint.
  std::vector<std::vector<Rational>> cuts;
  std::vector<std::vector<int>> cut_vertices;
  std::vector<std::vector<int>> sub_edges;
};

Refinement refine_with_map(const MetrizedComplex& c, const std::vector<Point>& points);
MetrizedComplex refine(const MetrizedComplex& c, const std::vector<Point>& points);

}  // namespace tdw
