#pragma once

#include <utility>
#include <vector>

#include "tdw/metric_graph.hpp"

namespace tdw {

// One chip displacement of a firing move.
struct MgChipMove {
  MgPoint from;
  MgPoint to;
};

// Outcome of one burning pass from a base vertex. The burnt region per
// edge is the open prefix (0, pos_a) from endpoint a (when ignited_a)
// plus the open suffix (pos_b, len) from endpoint b (when ignited_b);
// a fully burnt interior is flagged separately. When the unburnt set is
// nonempty it is the maximal firing set and epsilon/moves describe the
// maximal firing step.
struct MgBurnResult {
  bool reduced = false;
  std::vector<char> vertex_burnt;
  std::vector<char> ignited_a, ignited_b;
  std::vector<Rational> pos_a, pos_b;
  std::vector<char> interior_all_burnt;
  Rational epsilon;
  std::vector<MgChipMove> moves;

  // Closed unburnt interval [lo, hi] of an edge in offset coordinates,
  // or false when the whole interior burnt.
  bool unburnt_interval(const MetricGraph& g, int e, Rational* lo, Rational* hi) const;
};

// Dhar's burning pass from vertex q. D must be effective away from q.
MgBurnResult mg_burn(const MetricGraph& g, const MgDivisor& d, int q);

// q-reduced representative of an effective-away-from-q divisor; iterates
// burn + maximal firing until everything burns. Exact and deterministic.
MgDivisor mg_reduce(const MetricGraph& g, MgDivisor d, int q);

}  // namespace tdw
