#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tdw/complex.hpp"

namespace tdw {

// Rank value with the evidence the search produced: for rank r >= 0 a
// size-(r+1) multiset from the rank-determining set that cannot be
// subtracted, with the reduced divisor at the failing step; for rank -1
// the reduced divisor witnessing non-effectivity.
struct RankCertificate {
  int rank = -1;
  std::vector<Point> failing_multiset;
  std::optional<Point> failing_point;
  Divisor witness;
};

// g+1 points that determine ranks: interior points of the non-tree edges
// of a spanning tree plus one more graph point, and one node-avoiding
// point on each genus-1 component.
std::vector<Point> rank_determining_set(const MetrizedComplex& c);

RankCertificate rank(const MetrizedComplex& c, const Divisor& d);

// Effective representative of [d] containing the effective divisor e,
// if one exists.
std::optional<Divisor> representative_containing(const MetrizedComplex& c, const Divisor& d,
                                                 const Divisor& e);

// Partition-refined variant: the representative must additionally carry
// degree >= the prescribed rank on each listed component. The check runs
// on the representative the search produces; absence therefore means "no
// representative found meeting the prescription", not a nonexistence
// proof.
std::optional<Divisor> representative_containing(const MetrizedComplex& c, const Divisor& d,
                                                 const Divisor& e,
                                                 const std::map<int, int>& component_ranks);

struct RiemannRochReport {
  long long degree = 0;
  int rank_d = -1;
  int rank_residual = -1;  // rank of K - D
  long long lhs = 0;       // r(D) - r(K-D)
  long long rhs = 0;       // deg(D) - g + 1
  bool holds = false;
};
RiemannRochReport verify_riemann_roch(const MetrizedComplex& c, const Divisor& d);

struct CliffordReport {
  long long degree = 0;
  int rank_d = -1;
  int rank_residual = -1;
  bool special = false;  // both D and K - D have nonnegative rank
  bool holds = false;    // vacuous unless special
};
CliffordReport verify_clifford(const MetrizedComplex& c, const Divisor& d);

}  // namespace tdw
