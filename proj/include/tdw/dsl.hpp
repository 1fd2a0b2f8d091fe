#pragma once

#include <map>
#include <string>
#include <vector>

#include "tdw/complex.hpp"

namespace tdw {

struct ParseWarning {
  int line = 0;
  int col = 0;
  std::string message;
};

// Parsed .tdc document: one complex, named divisors, named point aliases.
// Parsing is total: it either throws InputError with a line:col prefix or
// returns a fully validated document.
struct ComplexDocument {
  std::string name;
  MetrizedComplex complex;
  std::vector<std::string> divisor_order;
  std::map<std::string, Divisor> divisors;
  std::vector<std::string> point_order;
  std::map<std::string, Point> points;
  std::vector<ParseWarning> warnings;

  int vertex_id(const std::string& name) const;  // -1 when unknown
  int edge_id(const std::string& name) const;

  const Divisor& divisor(const std::string& name) const;

  // A location expression: vertex or alias name, EDGE(RAT), VERTEX[RAT].
  Point location(const std::string& text) const;
};

ComplexDocument parse_document(const std::string& text);
std::string print_document(const ComplexDocument& doc);

// Location string in document syntax (inverse of location()).
std::string location_str(const ComplexDocument& doc, const Point& p);

}  // namespace tdw
