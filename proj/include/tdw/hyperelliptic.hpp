#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdw/complex.hpp"
#include "tdw/rank.hpp"

namespace tdw {

// A divisor class, kept as its reduced representative at the global base
// point. Two classes on the same complex are equal iff the canonical
// representatives coincide.
class DivisorClass {
 public:
  DivisorClass(const MetrizedComplex& c, const Divisor& rep);
  const Divisor& canonical() const { return canonical_; }
  long long degree() const { return canonical_.degree(); }
  friend bool operator==(const DivisorClass& a, const DivisorClass& b) {
    return a.canonical_ == b.canonical_;
  }

 private:
  Divisor canonical_;
};

// Order-2 symmetry of a complex: a vertex permutation, an edge
// permutation with orientation flags, and on each genus-1 component the
// reflection q -> s_v - q determined by the node pairing. Genus-1
// vertices are always fixed and their node-pair sums consistent; on
// fixed rational components the point action is the identity.
struct Involution {
  std::vector<int> vertex_image;
  std::vector<int> edge_image;
  std::vector<char> edge_reversed;
  std::vector<Rational> reflection_sum;  // per vertex; meaningful on genus 1

  bool is_identity() const;
  std::vector<int> fixed_vertices() const;
  std::vector<int> midpoint_fixed_edges() const;  // e -> e with orientation flipped

  friend bool operator==(const Involution& a, const Involution& b) {
    return a.vertex_image == b.vertex_image && a.edge_image == b.edge_image &&
           a.edge_reversed == b.edge_reversed;
  }
  friend bool operator<(const Involution& a, const Involution& b);
};

// All order-<=2 automorphisms preserving lengths and genera, with every
// genus-1 vertex fixed and its node-pair sums consistent. Includes the
// identity when it is node-compatible.
std::vector<Involution> involutions(const MetrizedComplex& c);

Point apply_involution(const MetrizedComplex& c, const Involution& inv, const Point& p);

// Quotient Betti number bookkeeping: true iff the quotient of the
// underlying graph by the involution is a tree (reversed self-images
// fold to half-edges).
bool quotient_is_tree(const MetrizedComplex& c, const Involution& inv);

struct StructureReport {
  bool pass = false;
  bool graph_is_tree = false;
  std::optional<Involution> involution;
  std::optional<Divisor> g12_rep;  // p + iota(p), rank-verified when g >= 2
  int candidates = 0;              // involutions satisfying the structure conditions
  std::string detail;
};

// Structural hyperellipticity test: some involution has a tree quotient
// (identity, for trees), every positive-genus vertex is fixed, and the
// paired node divisors p + p' are all equivalent on their component.
// The genus >= 2 component condition is vacuous in this model.
StructureReport structure_check(const MetrizedComplex& c);

// The degree-2 rank-1 class, when the complex is hyperelliptic.
std::optional<DivisorClass> g12(const MetrizedComplex& c);

// The hyperelliptic point involution; requires structure_check to pass.
Point iota(const MetrizedComplex& c, const Point& p);

struct Decomposition {
  int rank = 0;
  Divisor residual;    // p_{2r+1} + ... + p_d
  Point fixed_point;
  Divisor reduced;     // the reduced representative at the fixed point
};

// Writes [d] as rank * g12 + residual via the reduced representative at
// a fixed point of the involution; requires 0 <= rank <= deg <= g.
Decomposition decompose(const MetrizedComplex& c, const Divisor& d);

inline constexpr unsigned long long kDefaultSeed = 1000003;

// Rigid effective divisors of degree g-1 with P + Q ~ K, component
// restrictions rigid and node-avoiding; randomized search with verified
// candidates.
struct PqPair {
  Divisor p;
  Divisor q;
};
PqPair construct_pq(const MetrizedComplex& c, unsigned long long seed = kDefaultSeed);

// The data driving the constructive hyperellipticity witness: P, Q with
// the derived pairing p_i <-> q_i for a class delta of degree 2r and
// rank r.
struct CliffordWitnessContext {
  Divisor p_divisor;
  Divisor q_divisor;
  std::vector<Point> p_points;
  std::vector<Point> q_points;  // aligned with p_points
  Divisor delta_rep;
  int r = 0;
};

CliffordWitnessContext make_witness_context(const MetrizedComplex& c, const Divisor& delta_rep,
                                            int r, const Divisor& p, const Divisor& q);
CliffordWitnessContext make_witness_context(const MetrizedComplex& c, const Divisor& delta_rep,
                                            int r, unsigned long long seed = kDefaultSeed);

// The unique r-subset B of Q with A + B in delta.
std::vector<Point> phi_map(const MetrizedComplex& c, const CliffordWitnessContext& ctx,
                           const std::vector<Point>& a);

struct WitnessResult {
  Divisor witness_rep;  // p_1 + q_1
  CliffordWitnessContext ctx;
  std::vector<Point> extended_rds;
};

// Constructive replay: from a class of degree 2r and rank r with
// 0 < r < g-1, derives the pairing, extends P to a rank determining set
// and returns the degree-2 class p_1 + q_1 of verified rank 1.
WitnessResult clifford_witness(const MetrizedComplex& c, const Divisor& delta_rep, int r,
                               unsigned long long seed = kDefaultSeed);

}  // namespace tdw
