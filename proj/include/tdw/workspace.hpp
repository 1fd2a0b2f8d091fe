#pragma once

#include <set>
#include <vector>

#include "tdw/dhar.hpp"
#include "tdw/realization.hpp"

namespace tdw {

// Working model for one computation: the realized metric graph of a
// complex, refined so that every requested base point is a vertex.
class Workspace {
 public:
  Workspace(const MetrizedComplex& c, const std::vector<Point>& base_points)
      : real_(c) {
    std::set<MgPoint> interior;
    for (const auto& p : base_points) {
      MgPoint mp = real_.to_graph(p);
      if (!mp.is_vertex()) interior.insert(mp);
    }
    ref_ = mg_refine(real_.graph(),
                     std::vector<MgPoint>(interior.begin(), interior.end()));
  }

  const MetricGraph& graph() const { return ref_.graph; }

  MgPoint lift_point(const Point& p) const { return ref_.to_refined(real_.to_graph(p)); }
  Point lower_point(const MgPoint& p) const { return real_.to_complex(ref_.to_source(p)); }
  MgDivisor lift(const Divisor& d) const { return ref_.to_refined(real_.to_graph(d)); }
  Divisor lower(const MgDivisor& d) const { return real_.to_complex(ref_.to_source(d)); }

  // vertex id of a point that was passed as a base point
  int vertex_of(const Point& p) const {
    MgPoint mp = lift_point(p);
    if (!mp.is_vertex()) throw std::logic_error("base point was not refined to a vertex");
    return mp.vertex;
  }

 private:
  Realization real_;
  MgRefinement ref_;
};

}  // namespace tdw
