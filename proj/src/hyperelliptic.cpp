#include "tdw/hyperelliptic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "tdw/errors.hpp"
#include "tdw/reduction.hpp"

namespace tdw {

DivisorClass::DivisorClass(const MetrizedComplex& c, const Divisor& rep)
    : canonical_(reduce_at(c, rep, c.base_point())) {}

bool Involution::is_identity() const {
  for (int v = 0; v < static_cast<int>(vertex_image.size()); ++v)
    if (vertex_image[v] != v) return false;
  for (int e = 0; e < static_cast<int>(edge_image.size()); ++e)
    if (edge_image[e] != e || edge_reversed[e]) return false;
  return true;
}

std::vector<int> Involution::fixed_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(vertex_image.size()); ++v)
    if (vertex_image[v] == v) out.push_back(v);
  return out;
}

std::vector<int> Involution::midpoint_fixed_edges() const {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(edge_image.size()); ++e)
    if (edge_image[e] == e && edge_reversed[e]) out.push_back(e);
  return out;
}

bool operator<(const Involution& a, const Involution& b) {
  if (a.vertex_image != b.vertex_image) return a.vertex_image < b.vertex_image;
  if (a.edge_image != b.edge_image) return a.edge_image < b.edge_image;
  return a.edge_reversed < b.edge_reversed;
}

namespace {

// Node coordinate of one end of an edge (genus-1 endpoints only).
Rational end_node(const EdgeData& e, bool a_side) {
  return (a_side ? e.node_a : e.node_b)->mod1();
}

struct InvolutionSearch {
  const MetrizedComplex& c;
  std::vector<int> vmap;
  std::vector<int> emap;
  std::vector<char> rev;
  std::vector<Involution> found;

  explicit InvolutionSearch(const MetrizedComplex& cx)
      : c(cx), vmap(cx.vertex_count(), -1), emap(cx.edge_count(), -1),
        rev(cx.edge_count(), 0) {}

  // incident length multiset with loops counted twice, plus genus
  std::pair<int, std::vector<Rational>> signature(int v) const {
    std::vector<Rational> lens;
    for (const auto& e : c.edges()) {
      if (e.a == v) lens.push_back(e.length);
      if (e.b == v) lens.push_back(e.length);
    }
    std::sort(lens.begin(), lens.end());
    return {c.genus_of_vertex(v), lens};
  }

  void run() {
    assign_vertex();
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
  }

  void assign_vertex() {
    int v = -1;
    for (int i = 0; i < c.vertex_count(); ++i)
      if (vmap[i] < 0) {
        v = i;
        break;
      }
    if (v < 0) {
      assign_edges();
      return;
    }
    vmap[v] = v;
    assign_vertex();
    vmap[v] = -1;
    if (c.genus_of_vertex(v) == 1) return;  // genus-1 vertices stay fixed
    auto sig_v = signature(v);
    for (int w = v + 1; w < c.vertex_count(); ++w) {
      if (vmap[w] >= 0 || c.genus_of_vertex(w) == 1) continue;
      if (signature(w) != sig_v) continue;
      vmap[v] = w;
      vmap[w] = v;
      assign_vertex();
      vmap[v] = vmap[w] = -1;
    }
  }

  // Edges grouped by unordered endpoint pair; each group must map onto
  // the group of the image pair with matching lengths.
  void assign_edges() {
    std::map<std::pair<int, int>, std::vector<int>> groups;
    for (int e = 0; e < c.edge_count(); ++e) {
      auto key = std::minmax(c.edges()[e].a, c.edges()[e].b);
      groups[{key.first, key.second}].push_back(e);
    }
    std::vector<std::pair<std::vector<int>, std::vector<int>>> tasks;  // group -> image group
    for (const auto& [key, es] : groups) {
      auto ikey = std::minmax(vmap[key.first], vmap[key.second]);
      std::pair<int, int> image{ikey.first, ikey.second};
      auto it = groups.find(image);
      if (it == groups.end() || it->second.size() != es.size()) return;
      if (image < key) continue;  // the mirrored task covers it
      tasks.emplace_back(es, it->second);
    }
    std::fill(emap.begin(), emap.end(), -1);
    assign_group(tasks, 0);
  }

  void assign_group(const std::vector<std::pair<std::vector<int>, std::vector<int>>>& tasks,
                    std::size_t t) {
    if (t == tasks.size()) {
      finish();
      return;
    }
    match_edges(tasks, t, tasks[t].first);
  }

  void match_edges(const std::vector<std::pair<std::vector<int>, std::vector<int>>>& tasks,
                   std::size_t t, const std::vector<int>& source) {
    int e = -1;
    for (int cand : source)
      if (emap[cand] < 0) {
        e = cand;
        break;
      }
    if (e < 0) {
      assign_group(tasks, t + 1);
      return;
    }
    const bool self_task = tasks[t].first == tasks[t].second;
    for (int f : tasks[t].second) {
      if (self_task) {
        // involutive self-matching within one group
        if (f != e && emap[f] >= 0) continue;
        if (f < e) continue;
      } else if (emap[f] >= 0) {
        continue;
      }
      if (!(c.edges()[e].length == c.edges()[f].length)) continue;
      emap[e] = f;
      emap[f] = e;
      match_edges(tasks, t, source);
      emap[e] = emap[f] = -1;
    }
  }

  void finish() {
    // orientation flags: forced by the vertex map except for self-loops
    std::vector<int> free_flag_orbits;
    for (int e = 0; e < c.edge_count(); ++e) {
      const EdgeData& ed = c.edges()[e];
      int f = emap[e];
      const EdgeData& fd = c.edges()[f];
      if (ed.a == ed.b) {
        if (e <= f) free_flag_orbits.push_back(e);
        continue;
      }
      if (vmap[ed.a] == fd.a && vmap[ed.b] == fd.b)
        rev[e] = 0;
      else if (vmap[ed.a] == fd.b && vmap[ed.b] == fd.a)
        rev[e] = 1;
      else
        return;  // vertex map and edge map disagree
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << free_flag_orbits.size()); ++mask) {
      for (std::size_t i = 0; i < free_flag_orbits.size(); ++i) {
        int e = free_flag_orbits[i];
        rev[e] = (mask >> i) & 1;
        rev[emap[e]] = rev[e];
      }
      emit();
    }
    if (free_flag_orbits.empty()) emit();
  }

  void emit() {
    // node-pair sums on genus-1 components must agree
    std::vector<Rational> sums(c.vertex_count(), Rational(0));
    for (int v = 0; v < c.vertex_count(); ++v) {
      if (c.genus_of_vertex(v) != 1) continue;
      bool have = false;
      Rational s;
      for (int e = 0; e < c.edge_count(); ++e) {
        const EdgeData& ed = c.edges()[e];
        for (bool a_side : {true, false}) {
          int endv = a_side ? ed.a : ed.b;
          if (endv != v) continue;
          const EdgeData& fd = c.edges()[emap[e]];
          bool image_side = rev[e] ? !a_side : a_side;
          Rational pair_sum =
              (end_node(ed, a_side) + end_node(fd, image_side)).mod1();
          if (!have) {
            s = pair_sum;
            have = true;
          } else if (!(s == pair_sum)) {
            return;
          }
        }
      }
      sums[v] = have ? s : Rational(0);
    }
    Involution inv;
    inv.vertex_image = vmap;
    inv.edge_image = emap;
    inv.edge_reversed.assign(rev.begin(), rev.end());
    inv.reflection_sum = sums;
    found.push_back(std::move(inv));
  }
};

}  // namespace

std::vector<Involution> involutions(const MetrizedComplex& c) {
  InvolutionSearch search(c);
  search.run();
  return search.found;
}

Point apply_involution(const MetrizedComplex& c, const Involution& inv, const Point& p) {
  c.validate_point(p);
  switch (p.kind) {
    case PointKind::Vertex:
      return Point::vertex(inv.vertex_image[p.id]);
    case PointKind::Edge: {
      int f = inv.edge_image[p.id];
      Rational off = inv.edge_reversed[p.id] ? c.edges()[p.id].length - p.pos : p.pos;
      return Point::on_edge(f, off);
    }
    case PointKind::Component: {
      int v = p.id;
      if (c.genus_of_vertex(v) == 1)
        return Point::on_component(v, (inv.reflection_sum[v] - p.pos).mod1());
      int w = inv.vertex_image[v];
      if (w == v) return p;  // identity on a fixed rational component
      // any point of the image component works; use the vertex label
      return Point::vertex(w);
    }
  }
  throw InputError("unknown point kind");
}

bool quotient_is_tree(const MetrizedComplex& c, const Involution& inv) {
  int vq = 0;
  for (int v = 0; v < c.vertex_count(); ++v)
    if (inv.vertex_image[v] >= v) ++vq;
  int eq = 0;
  for (int e = 0; e < c.edge_count(); ++e) {
    int f = inv.edge_image[e];
    if (f == e) {
      ++eq;
      if (inv.edge_reversed[e]) ++vq;  // folds to a half-edge with a new leaf
    } else if (e < f) {
      ++eq;
    }
  }
  return eq == vq - 1;
}

namespace {

Divisor g12_candidate(const MetrizedComplex& c, const Involution& inv) {
  Point p = c.edge_count() > 0 ? Point::on_edge(0, c.edges()[0].length / 2) : c.base_point();
  Divisor rep = Divisor::single(p);
  rep.add(apply_involution(c, inv, p), 1);
  return rep;
}

}  // namespace

StructureReport structure_check(const MetrizedComplex& c) {
  StructureReport rep;
  rep.graph_is_tree = c.betti() == 0;
  rep.detail = "genus >= 2 component condition vacuous; node pairs compared on C_v";

  std::vector<Involution> invs = involutions(c);
  std::vector<Involution> candidates;
  for (const auto& inv : invs) {
    if (rep.graph_is_tree) {
      if (inv.is_identity()) candidates.push_back(inv);
    } else if (quotient_is_tree(c, inv)) {
      candidates.push_back(inv);
    }
  }
  rep.candidates = static_cast<int>(candidates.size());
  for (const auto& inv : candidates) {
    Divisor g12_rep = g12_candidate(c, inv);
    if (c.genus() >= 2) {
      RankCertificate cert = rank(c, g12_rep);
      if (cert.rank != 1) continue;  // never expected for a true candidate
    }
    rep.pass = true;
    rep.involution = inv;
    rep.g12_rep = g12_rep;
    return rep;
  }
  return rep;
}

std::optional<DivisorClass> g12(const MetrizedComplex& c) {
  if (c.genus() < 2) throw MathError("g12 requires genus >= 2");
  StructureReport rep = structure_check(c);
  if (!rep.pass) return std::nullopt;
  return DivisorClass(c, *rep.g12_rep);
}

Point iota(const MetrizedComplex& c, const Point& p) {
  StructureReport rep = structure_check(c);
  if (!rep.pass) throw MathError("complex is not hyperelliptic");
  return apply_involution(c, *rep.involution, p);
}

namespace {

Point fixed_point_of(const MetrizedComplex& c, const Involution& inv) {
  for (int v : inv.fixed_vertices())
    if (c.genus_of_vertex(v) == 0) return Point::vertex(v);
  for (int v : inv.fixed_vertices())
    if (c.genus_of_vertex(v) == 1)
      return Point::on_component(v, (inv.reflection_sum[v] / 2).mod1());
  for (int e : inv.midpoint_fixed_edges()) return Point::on_edge(e, c.edges()[e].length / 2);
  for (int e = 0; e < c.edge_count(); ++e)
    if (inv.edge_image[e] == e && !inv.edge_reversed[e])
      return Point::on_edge(e, c.edges()[e].length / 2);  // pointwise fixed edge
  throw MathError("involution has no fixed point");
}

}  // namespace

Decomposition decompose(const MetrizedComplex& c, const Divisor& d) {
  StructureReport sc = structure_check(c);
  if (!sc.pass) throw MathError("complex is not hyperelliptic");
  RankCertificate cert = rank(c, d);
  if (cert.rank < 0) throw MathError("divisor class has no effective representative");

  Decomposition out;
  out.rank = cert.rank;
  out.fixed_point = fixed_point_of(c, *sc.involution);
  out.reduced = reduce_at(c, d, out.fixed_point);
  long long at_p = out.reduced.coeff(out.fixed_point);
  if (at_p < 2 * cert.rank) {
    // guaranteed for deg <= g; larger degrees are attempted best-effort
    if (d.degree() > c.genus())
      throw MathError("decompose needs deg <= g; the reduced representative carries only " +
                      std::to_string(at_p) + " chips at the fixed point");
    throw MathError("reduced representative carries fewer than 2r chips at the fixed point");
  }
  out.residual = out.reduced - Divisor::single(out.fixed_point, 2 * cert.rank);
  return out;
}

namespace {

struct PqSampler {
  const MetrizedComplex& c;
  std::mt19937_64 rng;

  Rational random_fraction(long long trial) {
    long long den = 16 + trial % 11;
    std::uniform_int_distribution<long long> dn(1, den - 1);
    return Rational(dn(rng), den);
  }

  Point random_graph_point(long long trial) {
    std::uniform_int_distribution<int> pe(0, c.edge_count() - 1);
    int e = pe(rng);
    return Point::on_edge(e, random_fraction(trial) * c.edges()[e].length);
  }

  Point random_component_point(int v, long long trial) {
    const auto& nodes = c.nodes_of(v);
    for (;;) {
      Rational coord = random_fraction(trial);
      if (!std::binary_search(nodes.begin(), nodes.end(), coord))
        return Point::on_component(v, coord);
    }
  }
};

// Shape checks shared by P and Q: single chips, all interior graph
// points or node-avoiding genus-1 points, and on each genus-1 component
// exactly one chip (none on the distinguished one when h <= 1).
bool pq_shape_ok(const MetrizedComplex& c, const Divisor& x, int skip_vertex) {
  std::vector<long long> comp_total(c.vertex_count(), 0);
  for (const auto& [p, cnt] : x.coeffs()) {
    if (cnt != 1) return false;
    if (p.kind == PointKind::Vertex) return false;
    if (p.kind == PointKind::Component) {
      if (c.genus_of_vertex(p.id) == 0) return false;
      const auto& nodes = c.nodes_of(p.id);
      if (std::binary_search(nodes.begin(), nodes.end(), p.pos)) return false;
      comp_total[p.id] += cnt;
    }
  }
  for (int v = 0; v < c.vertex_count(); ++v) {
    if (c.genus_of_vertex(v) != 1) continue;
    long long expect = (v == skip_vertex) ? 0 : 1;
    if (comp_total[v] != expect) return false;
  }
  return true;
}

}  // namespace

PqPair construct_pq(const MetrizedComplex& c, unsigned long long seed) {
  if (c.genus() <= 1) throw MathError("construct_pq requires genus > 1");
  const int h = c.betti();
  int v0 = -1;
  if (h <= 1) {
    for (int v = 0; v < c.vertex_count() && v0 < 0; ++v)
      if (c.genus_of_vertex(v) == 1) v0 = v;
    if (v0 < 0) throw std::logic_error("genus > 1 with h <= 1 needs a genus-1 vertex");
  }
  const int graph_chips = h >= 2 ? h - 1 : h;
  const Divisor k = canonical_divisor(c);

  PqSampler sampler{c, std::mt19937_64(seed)};
  for (long long trial = 0; trial < 10000; ++trial) {
    Divisor p;
    bool collision = false;
    for (int i = 0; i < graph_chips; ++i) {
      Point gp = sampler.random_graph_point(trial);
      if (p.coeff(gp) != 0) collision = true;
      p.add(gp, 1);
    }
    for (int v = 0; v < c.vertex_count(); ++v)
      if (c.genus_of_vertex(v) == 1 && v != v0)
        p.add(sampler.random_component_point(v, trial), 1);
    if (collision || !pq_shape_ok(c, p, v0)) continue;

    std::optional<Divisor> q = effective_representative(c, k - p);
    if (!q || !pq_shape_ok(c, *q, v0)) continue;
    bool disjoint = true;
    for (const auto& [pt, cnt] : q->coeffs())
      if (p.coeff(pt) != 0) disjoint = false;
    if (!disjoint) continue;
    if (!is_rigid(c, p) || !is_rigid(c, *q)) continue;
    return {p, *q};
  }
  throw MathError("construct_pq search budget exhausted");
}

namespace {

std::vector<Point> support_points(const Divisor& d) {
  std::vector<Point> pts;
  for (const auto& [p, cnt] : d.coeffs()) pts.push_back(p);
  return pts;
}

Divisor sum_points(const std::vector<Point>& pts) {
  Divisor d;
  for (const auto& p : pts) d.add(p, 1);
  return d;
}

void subsets_of(const std::vector<Point>& pool, int k,
                const std::function<void(const std::vector<Point>&)>& visit) {
  std::vector<Point> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(cur.size()) == k) {
      visit(cur);
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// The representative of delta through A, decomposed as A + B with B in
// the support of Q.
std::vector<Point> phi_raw(const MetrizedComplex& c, const Divisor& delta_rep,
                           const std::vector<Point>& a, const Divisor& q_divisor) {
  std::optional<Divisor> rep = representative_containing(c, delta_rep, sum_points(a));
  if (!rep)
    throw MathError("no representative through the prescribed subset; rank hypothesis violated");
  Divisor b = *rep - sum_points(a);
  if (!b.effective()) throw MathError("representative does not contain the prescribed subset");
  for (const auto& [p, cnt] : b.coeffs())
    if (cnt != 1 || q_divisor.coeff(p) != 1)
      throw MathError("representative through the subset is not supported on P + Q");
  return support_points(b);
}

}  // namespace

CliffordWitnessContext make_witness_context(const MetrizedComplex& c, const Divisor& delta_rep,
                                            int r, const Divisor& p, const Divisor& q) {
  const int g = c.genus();
  if (p.degree() != g - 1 || q.degree() != g - 1)
    throw MathError("P and Q must have degree g - 1");
  if (!p.effective() || !q.effective()) throw MathError("P and Q must be effective");
  for (const auto& [pt, cnt] : p.coeffs())
    if (cnt != 1 || q.coeff(pt) != 0) throw MathError("P and Q must be disjoint and multiplicity-free");
  if (!is_equivalent(c, p + q, canonical_divisor(c)))
    throw MathError("P + Q is not canonical");
  if (!is_rigid(c, p) || !is_rigid(c, q)) throw MathError("P and Q must be rigid");

  CliffordWitnessContext ctx;
  ctx.p_divisor = p;
  ctx.q_divisor = q;
  ctx.p_points = support_points(p);
  ctx.delta_rep = delta_rep;
  ctx.r = r;

  // q_i is the one point of Q missed by the union of phi over all
  // r-subsets of P avoiding p_i
  for (std::size_t i = 0; i < ctx.p_points.size(); ++i) {
    std::vector<Point> pool;
    for (std::size_t j = 0; j < ctx.p_points.size(); ++j)
      if (j != i) pool.push_back(ctx.p_points[j]);
    std::set<Point> hit;
    subsets_of(pool, r, [&](const std::vector<Point>& a) {
      for (const auto& b : phi_raw(c, delta_rep, a, q)) hit.insert(b);
    });
    std::vector<Point> missing;
    for (const auto& qp : support_points(q))
      if (!hit.count(qp)) missing.push_back(qp);
    if (missing.size() != 1)
      throw MathError("pairing inconsistency: union of phi images misses " +
                      std::to_string(missing.size()) + " points of Q");
    ctx.q_points.push_back(missing.front());
  }

  for (std::size_t i = 0; i < ctx.q_points.size(); ++i)
    for (std::size_t j = i + 1; j < ctx.q_points.size(); ++j)
      if (ctx.q_points[i] == ctx.q_points[j])
        throw MathError("pairing inconsistency: repeated partner point");

  Divisor first = sum_points({ctx.p_points[0], ctx.q_points[0]});
  for (std::size_t i = 1; i < ctx.p_points.size(); ++i)
    if (!is_equivalent(c, first, sum_points({ctx.p_points[i], ctx.q_points[i]})))
      throw MathError("pairing inconsistency: p_i + q_i classes differ");
  return ctx;
}

CliffordWitnessContext make_witness_context(const MetrizedComplex& c, const Divisor& delta_rep,
                                            int r, unsigned long long seed) {
  PqPair pq = construct_pq(c, seed);
  return make_witness_context(c, delta_rep, r, pq.p, pq.q);
}

std::vector<Point> phi_map(const MetrizedComplex& c, const CliffordWitnessContext& ctx,
                           const std::vector<Point>& a) {
  if (static_cast<int>(a.size()) != ctx.r) throw InputError("subset size must equal r");
  for (const auto& pt : a)
    if (ctx.p_divisor.coeff(pt) != 1) throw InputError("subset not contained in P");
  return phi_raw(c, ctx.delta_rep, a, ctx.q_divisor);
}

namespace {

// Graph point contained in some representative of the degree-2 class.
Point graph_point_in_class(const MetrizedComplex& c, const Divisor& w_rep,
                           const std::set<Point>& avoid) {
  for (int e = 0; e < c.edge_count(); ++e) {
    for (long long den : {2, 3, 5, 7}) {
      for (long long num = 1; num < den; ++num) {
        Point cand = Point::on_edge(e, Rational(num, den) * c.edges()[e].length);
        if (avoid.count(cand)) continue;
        if (representative_containing(c, w_rep, Divisor::single(cand))) return cand;
      }
    }
  }
  throw MathError("no graph point found inside the witness class");
}

// Whether deleting the given edges leaves a spanning tree.
bool deletion_leaves_tree(const MetrizedComplex& c, const std::set<int>& cut) {
  if (static_cast<int>(cut.size()) != c.betti()) return false;
  std::vector<int> parent(c.vertex_count());
  for (int i = 0; i < c.vertex_count(); ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  int merges = 0;
  for (int e = 0; e < c.edge_count(); ++e) {
    if (cut.count(e)) continue;
    int ra = find(c.edges()[e].a), rb = find(c.edges()[e].b);
    if (ra == rb) return false;  // a surviving cycle
    parent[ra] = rb;
    ++merges;
  }
  return merges == c.vertex_count() - 1;
}

}  // namespace

WitnessResult clifford_witness(const MetrizedComplex& c, const Divisor& delta_rep, int r,
                               unsigned long long seed) {
  const int g = c.genus();
  if (!(0 < r && r < g - 1))
    throw MathError("clifford witness requires 0 < r < g - 1");
  if (delta_rep.degree() != 2 * r) throw MathError("delta must have degree 2r");
  if (rank(c, delta_rep).rank != r) throw MathError("delta must have rank r");

  const int h = c.betti();
  MathError last_error("witness construction failed");
  for (unsigned long long attempt = 0; attempt < 8; ++attempt) {
    try {
      CliffordWitnessContext ctx = make_witness_context(c, delta_rep, r, seed + attempt);
      Divisor w_rep = sum_points({ctx.p_points[0], ctx.q_points[0]});

      std::vector<Point> rds = ctx.p_points;
      std::set<Point> avoid(rds.begin(), rds.end());

      if (h >= 2) {
        // swap one graph point of P for a point p_h completing a
        // cycle-breaking set, and check the pairing extends
        std::vector<Point> graph_pts;
        for (const auto& pt : ctx.p_points)
          if (pt.kind == PointKind::Edge) graph_pts.push_back(pt);
        if (static_cast<int>(graph_pts.size()) != h - 1)
          throw MathError("P does not carry h - 1 graph points");
        std::set<int> p_edges;
        for (const auto& pt : graph_pts) p_edges.insert(pt.id);
        if (static_cast<int>(p_edges.size()) != h - 1)
          throw MathError("graph points of P share an edge");

        bool extended = false;
        std::mt19937_64 rng(seed + attempt + 17);
        for (int e = 0; e < c.edge_count() && !extended; ++e) {
          if (p_edges.count(e)) continue;
          std::set<int> cut = p_edges;
          cut.insert(e);
          if (!deletion_leaves_tree(c, cut)) continue;
          for (int tries = 0; tries < 12 && !extended; ++tries) {
            std::uniform_int_distribution<long long> dn(1, 18);
            Point ph = Point::on_edge(e, Rational(dn(rng), 19) * c.edges()[e].length);
            if (avoid.count(ph)) continue;
            Divisor p_prime = ctx.p_divisor - Divisor::single(graph_pts[0]) + Divisor::single(ph);
            std::optional<Divisor> q_prime =
                effective_representative(c, canonical_divisor(c) - p_prime);
            if (!q_prime) continue;
            try {
              CliffordWitnessContext ctx2 =
                  make_witness_context(c, delta_rep, r, p_prime, *q_prime);
              // partner of p_h in the extended context
              Point qh;
              bool got = false;
              for (std::size_t i = 0; i < ctx2.p_points.size(); ++i)
                if (ctx2.p_points[i] == ph) {
                  qh = ctx2.q_points[i];
                  got = true;
                }
              if (!got) continue;
              if (!is_equivalent(c, w_rep, sum_points({ph, qh})))
                throw MathError("pairing does not extend to p_h");
              rds.push_back(ph);
              avoid.insert(ph);
              extended = true;
            } catch (const MathError&) {
              continue;
            }
          }
        }
        if (!extended) throw MathError("no cycle-completing point p_h admitted a context");
      } else {
        // distinguished genus-1 vertex carries no point of P; add one
        int v0 = -1;
        for (int v = 0; v < c.vertex_count() && v0 < 0; ++v) {
          if (c.genus_of_vertex(v) != 1) continue;
          bool has_chip = false;
          for (const auto& [pt, cnt] : ctx.p_divisor.coeffs())
            if (pt.kind == PointKind::Component && pt.id == v) has_chip = true;
          if (!has_chip) v0 = v;
        }
        if (v0 < 0) throw MathError("no distinguished component found for h <= 1");
        std::mt19937_64 rng(seed + attempt + 29);
        bool placed = false;
        for (int tries = 0; tries < 50 && !placed; ++tries) {
          std::uniform_int_distribution<long long> dn(1, 22);
          Rational coord(dn(rng), 23);
          const auto& nodes = c.nodes_of(v0);
          if (std::binary_search(nodes.begin(), nodes.end(), coord)) continue;
          Point p0 = Point::on_component(v0, coord);
          if (avoid.count(p0)) continue;
          if (!is_rigid(c, Divisor::single(p0))) continue;
          rds.push_back(p0);
          avoid.insert(p0);
          placed = true;
        }
        if (!placed) throw MathError("no rigid point found on the distinguished component");
      }

      rds.push_back(graph_point_in_class(c, w_rep, avoid));

      // the witness class passes through every point of the extended set
      for (const auto& rho : rds)
        if (!representative_containing(c, w_rep, Divisor::single(rho)))
          throw MathError("witness class misses a rank determining point");

      RankCertificate cert = rank(c, w_rep);
      if (cert.rank != 1)
        throw MathError("witness class has rank " + std::to_string(cert.rank));

      WitnessResult out;
      out.witness_rep = w_rep;
      out.ctx = ctx;
      out.extended_rds = rds;
      return out;
    } catch (const MathError& err) {
      last_error = err;
    }
  }
  throw last_error;
}

}  // namespace tdw
