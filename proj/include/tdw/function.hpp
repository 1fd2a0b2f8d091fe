#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tdw/complex.hpp"

namespace tdw {

// A rational function on a metrized complex: a continuous piecewise
// linear graph part with integer slopes, plus for each genus-1 vertex an
// optional principal component part given by its divisor (degree 0 and
// coordinate sum 0 on the circle group).
//
// Applying the function to a divisor adds div(f): slope breaks deposit
// chips inside edges, edge-end slopes deposit at the vertex (genus 0) or
// at that end's node point (genus 1), and the component parts are added
// as given. The class of the restriction to a genus-1 component C_v is
// translated by component_shift(v) in R/Z; the component part itself
// never moves the class, only rearranges chips within it.
class ComplexFunction {
 public:
  // Interior breakpoints of one edge as (offset, value) pairs, sorted.
  struct EdgeProfile {
    std::vector<std::pair<Rational, Rational>> breaks;
  };

  ComplexFunction(const MetrizedComplex& c, std::vector<Rational> vertex_values,
                  std::vector<EdgeProfile> profiles,
                  std::map<int, Divisor> component_parts = {});

  static ComplexFunction constant(const MetrizedComplex& c, const Rational& value);

  const Divisor& principal_divisor() const { return div_; }
  Rational component_shift(int vertex) const;
  const std::vector<Rational>& vertex_values() const { return vertex_values_; }
  const std::vector<EdgeProfile>& profiles() const { return profiles_; }

  ComplexFunction negated(const MetrizedComplex& c) const;

 private:
  std::vector<Rational> vertex_values_;
  std::vector<EdgeProfile> profiles_;
  std::map<int, Divisor> component_parts_;
  std::map<int, Rational> shifts_;
  Divisor div_;
};

// D + div(f); exact, degree preserving, result equivalent to D.
Divisor apply_function(const MetrizedComplex& c, const Divisor& d, const ComplexFunction& f);

}  // namespace tdw
