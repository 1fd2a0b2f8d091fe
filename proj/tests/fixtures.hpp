#pragma once

// Shared test fixtures. Sizes are small enough that every expected value
// here is either immediate from the definitions or frozen from the
// finite-graph oracle.

#include "tdw/complex.hpp"

namespace fixtures {

using tdw::build_complex;
using tdw::Divisor;
using tdw::EdgeData;
using tdw::MetrizedComplex;
using tdw::Point;
using tdw::Rational;
using tdw::VertexData;

// one genus-0 vertex with a unit self-loop; g = 1
inline MetrizedComplex loop() {
  return build_complex({{"v", 0}}, {{"e", 0, 0, Rational(1), {}, {}}});
}

// two genus-0 vertices joined by three unit edges; g = 2
inline MetrizedComplex theta() {
  return build_complex({{"v1", 0}, {"v2", 0}},
                       {{"e1", 0, 1, Rational(1), {}, {}},
                        {"e2", 0, 1, Rational(1), {}, {}},
                        {"e3", 0, 1, Rational(1), {}, {}}});
}

// banana with four parallel unit edges; g = 3
inline MetrizedComplex b4() {
  return build_complex({{"v1", 0}, {"v2", 0}},
                       {{"e1", 0, 1, Rational(1), {}, {}},
                        {"e2", 0, 1, Rational(1), {}, {}},
                        {"e3", 0, 1, Rational(1), {}, {}},
                        {"e4", 0, 1, Rational(1), {}, {}}});
}

// complete graph on four vertices, unit lengths; g = 3, not hyperelliptic
inline MetrizedComplex k4() {
  return build_complex({{"v1", 0}, {"v2", 0}, {"v3", 0}, {"v4", 0}},
                       {{"e12", 0, 1, Rational(1), {}, {}},
                        {"e13", 0, 2, Rational(1), {}, {}},
                        {"e14", 0, 3, Rational(1), {}, {}},
                        {"e23", 1, 2, Rational(1), {}, {}},
                        {"e24", 1, 3, Rational(1), {}, {}},
                        {"e34", 2, 3, Rational(1), {}, {}}});
}

// two genus-1 components joined to a rational middle vertex by two
// parallel pairs of unit edges; g = 4
inline MetrizedComplex fig1() {
  return build_complex(
      {{"v1", 1}, {"v2", 0}, {"v3", 1}},
      {{"e1", 0, 1, Rational(1), Rational(0), {}},
       {"e2", 0, 1, Rational(1), Rational(1, 2), {}},
       {"e3", 1, 2, Rational(1), {}, Rational(0)},
       {"e4", 1, 2, Rational(1), {}, Rational(1, 2)}});
}

// the named points of the fig1 example
struct Fig1Points {
  Point x = Point::on_component(1, Rational(1, 4));
  Point p1 = Point::on_component(0, Rational(1, 8));
  Point q1 = Point::on_component(0, Rational(3, 8));
  Point p2 = Point::on_edge(0, Rational(1, 2));
  Point q2 = Point::on_edge(1, Rational(1, 2));
  Point p = Point::on_edge(0, Rational(1, 4));
  Point q = Point::on_edge(1, Rational(1, 4));
  Point p3 = Point::on_edge(2, Rational(1, 2));
  Point q3 = Point::on_edge(3, Rational(1, 2));
  Point p4 = Point::on_component(2, Rational(1, 8));
  Point q4 = Point::on_component(2, Rational(3, 8));
};

// two genus-1 components on a 2-cycle; h = 1, g = 3, hyperelliptic
inline MetrizedComplex cyc2() {
  return build_complex({{"v1", 1}, {"v2", 1}},
                       {{"e1", 0, 1, Rational(1), Rational(0), Rational(0)},
                        {"e2", 0, 1, Rational(1), Rational(1, 2), Rational(1, 2)}});
}

inline Point theta_midpoint() { return Point::on_edge(0, Rational(1, 2)); }

inline Divisor dv(std::initializer_list<std::pair<Point, long long>> items) {
  Divisor d;
  for (const auto& [p, c] : items) d.add(p, c);
  return d;
}

}  // namespace fixtures
