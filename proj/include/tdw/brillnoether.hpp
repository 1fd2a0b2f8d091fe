#pragma once

#include <vector>

#include "tdw/complex.hpp"

namespace tdw {

// Brill-Noether rank computed over the (1/ell)-lattice of the model.
// The universal quantifier over effective divisors is discretized, so a
// negative answer is relative to the lattice; exact is claimed only
// where the hyperelliptic formula backs it.
struct BnResult {
  int rho = -1;
  long long refine_level = 2;
  bool exact = false;
  bool floored = false;  // even the rho = -1 condition failed at this lattice
  std::vector<Divisor> failures;  // witnesses of degree r + rho + 1 with no containment
};

// Lattice divisor points of a graph-only complex: vertices plus the
// interior multiples of 1/ell along each edge.
std::vector<Point> lattice_points(const MetrizedComplex& c, long long ell);

// Whether some effective F supported on the lattice makes E + F a
// divisor of degree d and rank >= r.
bool contained_in_rank_class(const MetrizedComplex& c, const Divisor& e, long long d, int r,
                             long long ell);

// Largest rho such that every lattice-supported effective divisor of
// degree r + rho is contained in a divisor of degree d and rank r.
BnResult bn_rank(const MetrizedComplex& c, long long d, int r, long long ell);

struct MartensReport {
  BnResult bn;
  long long bound = 0;            // d - 2r
  bool bound_ok = false;          // rho <= d - 2r
  bool hyperelliptic = false;
  bool equality = false;          // rho == d - 2r
  bool hyperelliptic_equality_ok = false;  // hyperelliptic implies equality
  bool conjecture_instance = false;        // equality on a non-hyperelliptic graph
};

// Checks the Martens-type bound in the range 0 < 2r <= d < g.
MartensReport martens_check(const MetrizedComplex& c, long long d, int r, long long ell);

}  // namespace tdw
