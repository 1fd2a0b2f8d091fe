#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tdw/complex.hpp"

namespace tdw {

// A closed segment of the complex lying inside one edge or one component
// circle, given by its two endpoints.
struct BurnSegment {
  Point from;
  Point to;
};

// Outcome of one burning pass. When the unburnt set is nonempty it is
// the maximal firing set; epsilon is the largest firing step that moves
// no chip past a vertex or another chip, and moves lists one chip
// displacement per boundary direction.
struct BurnResult {
  bool reduced = false;
  std::vector<Point> unburnt_vertices;
  std::vector<BurnSegment> unburnt_segments;
  std::vector<Point> burnt_vertices;
  std::vector<BurnSegment> burnt_segments;
  Rational epsilon;
  std::vector<std::pair<Point, Point>> moves;
};

// Dhar's burning algorithm from base q. D must be effective away from q.
BurnResult dhar_burn(const MetrizedComplex& c, const Divisor& d, const Point& q);

// The q-reduced representative of the class of d (any divisor). The
// graph part is unique; on the base component chips pile up at q as far
// as the component class allows.
Divisor reduce_at(const MetrizedComplex& c, const Divisor& d, const Point& q);

// Linear equivalence, decided by comparing reduced representatives at
// the global base point.
bool is_equivalent(const MetrizedComplex& c, const Divisor& d, const Divisor& e);

// An effective divisor equivalent to d, if the class has one.
std::optional<Divisor> effective_representative(const MetrizedComplex& c, const Divisor& d);

// True iff the effective divisor d is the unique effective divisor in
// its class; decided by checking q-reducedness from every vertex of a
// model refined at the support of d.
bool is_rigid(const MetrizedComplex& c, const Divisor& d);

}  // namespace tdw
