#include "tdw/rank.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "tdw/errors.hpp"
#include "tdw/workspace.hpp"

namespace tdw {

namespace {

// Spanning tree by edge id; returns per-edge tree membership.
std::vector<char> spanning_tree(const MetrizedComplex& c) {
  std::vector<int> parent(c.vertex_count());
  for (int i = 0; i < c.vertex_count(); ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::vector<char> in_tree(c.edge_count(), 0);
  for (int e = 0; e < c.edge_count(); ++e) {
    int ra = find(c.edges()[e].a), rb = find(c.edges()[e].b);
    if (ra != rb) {
      parent[ra] = rb;
      in_tree[e] = 1;
    }
  }
  return in_tree;
}

// First coordinate from a deterministic sequence that avoids the nodes
// of the component and any previously used coordinates.
Rational free_coordinate(const MetrizedComplex& c, int v, std::set<Rational>& used) {
  const auto& nodes = c.nodes_of(v);
  for (long long den = 3; den < 200; ++den) {
    for (long long numr = 1; numr < den; ++numr) {
      Rational cand(numr, den);
      if (std::binary_search(nodes.begin(), nodes.end(), cand)) continue;
      if (used.count(cand)) continue;
      used.insert(cand);
      return cand;
    }
  }
  throw std::logic_error("no free component coordinate found");
}

}  // namespace

std::vector<Point> rank_determining_set(const MetrizedComplex& c) {
  std::vector<Point> rds;
  std::vector<char> in_tree = spanning_tree(c);

  // interior points of the non-tree edges break all cycles
  int first_tree_edge = -1;
  for (int e = 0; e < c.edge_count(); ++e) {
    if (in_tree[e]) {
      if (first_tree_edge < 0) first_tree_edge = e;
      continue;
    }
    rds.push_back(Point::on_edge(e, c.edges()[e].length / 2));
  }

  std::vector<std::set<Rational>> used(c.vertex_count());
  // one more graph point
  if (first_tree_edge >= 0) {
    rds.push_back(Point::on_edge(first_tree_edge, c.edges()[first_tree_edge].length / 2));
  } else if (c.edge_count() > 0) {
    // every edge is a loop at the single vertex
    int v = c.edges()[0].a;
    if (c.genus_of_vertex(v) == 0)
      rds.push_back(Point::vertex(v));
    else
      rds.push_back(Point::on_component(v, free_coordinate(c, v, used[v])));
  } else {
    int v = 0;
    if (c.genus_of_vertex(v) == 0)
      rds.push_back(Point::vertex(v));
    else
      rds.push_back(Point::on_component(v, free_coordinate(c, v, used[v])));
  }

  // one node-avoiding point per genus-1 component
  for (int v = 0; v < c.vertex_count(); ++v)
    if (c.genus_of_vertex(v) == 1)
      rds.push_back(Point::on_component(v, free_coordinate(c, v, used[v])));

  return rds;
}

namespace {

struct RankEngine {
  const MetrizedComplex& c;
  Workspace ws;
  std::vector<Point> rds;
  std::vector<int> rds_vertex;
  std::unordered_map<std::string, bool> memo;

  // failure evidence of the most recent all_multisets_pass run
  std::vector<Point> fail_prefix;
  std::optional<Point> fail_point;
  MgDivisor fail_state;

  static std::vector<Point> bases_for(const MetrizedComplex&, const Divisor& d,
                                      const std::vector<Point>& rds) {
    std::vector<Point> bases = rds;
    for (const auto& [p, coef] : d.coeffs())
      if (coef < 0) bases.push_back(p);
    return bases;
  }

  RankEngine(const MetrizedComplex& cx, const Divisor& d)
      : c(cx), ws(cx, bases_for(cx, d, rank_determining_set(cx))),
        rds(rank_determining_set(cx)) {
    for (const auto& p : rds) rds_vertex.push_back(ws.vertex_of(p));
  }

  // Effective representative of [d], or nullopt; plain Dhar chains only.
  std::optional<MgDivisor> effective_form(const Divisor& d) {
    if (d.degree() < 0) {
      fail_state = ws.lift(d);
      return std::nullopt;
    }
    MgDivisor t = ws.lift(d.positive_part());
    for (const auto& [p, coef] : d.coeffs()) {
      if (coef >= 0) continue;
      int pv = ws.vertex_of(p);
      MgPoint mp = MgPoint::at_vertex(pv);
      for (long long i = 0; i < -coef; ++i) {
        t = mg_reduce(ws.graph(), t, pv);
        if (mg_coeff(t, mp) < 1) {
          fail_state = t;
          fail_point = p;
          return std::nullopt;
        }
        mg_add(t, mp, -1);
      }
    }
    return t;
  }

  // Whether every size-k multiset drawn from rds[j..] can be subtracted
  // from the class of x while staying effective.
  bool all_multisets_pass(const MgDivisor& x, int j, int k) {
    if (k == 0) return true;
    for (int i = j; i < static_cast<int>(rds.size()); ++i) {
      MgDivisor y = mg_reduce(ws.graph(), x, rds_vertex[i]);
      MgPoint mp = MgPoint::at_vertex(rds_vertex[i]);
      if (mg_coeff(y, mp) < 1) {
        fail_point = rds[i];
        fail_state = y;
        return false;
      }
      mg_add(y, mp, -1);
      std::string key =
          std::to_string(i) + '|' + std::to_string(k - 1) + '|' + mg_key(y);
      auto it = memo.find(key);
      bool ok;
      if (it != memo.end()) {
        ok = it->second;
        if (!ok) {
          // replay for the certificate
          fail_prefix.push_back(rds[i]);
          all_multisets_pass(y, i, k - 1);
          return false;
        }
      } else {
        fail_prefix.push_back(rds[i]);
        ok = all_multisets_pass(y, i, k - 1);
        memo.emplace(std::move(key), ok);
        if (!ok) return false;
        fail_prefix.pop_back();
      }
    }
    return true;
  }
};

}  // namespace

RankCertificate rank(const MetrizedComplex& c, const Divisor& d) {
  c.validate_divisor(d);
  RankCertificate cert;
  RankEngine eng(c, d);

  std::optional<MgDivisor> t0 = eng.effective_form(d);
  if (!t0) {
    cert.rank = -1;
    cert.failing_point = eng.fail_point;
    cert.witness = eng.ws.lower(eng.fail_state);
    return cert;
  }

  int r = 0;
  while (true) {
    eng.fail_prefix.clear();
    eng.fail_point.reset();
    if (eng.all_multisets_pass(*t0, 0, r + 1)) {
      ++r;
      continue;
    }
    cert.rank = r;
    cert.failing_multiset = eng.fail_prefix;
    if (eng.fail_point) cert.failing_multiset.push_back(*eng.fail_point);
    cert.failing_point = eng.fail_point;
    cert.witness = eng.ws.lower(eng.fail_state);
    return cert;
  }
}

std::optional<Divisor> representative_containing(const MetrizedComplex& c, const Divisor& d,
                                                 const Divisor& e) {
  c.validate_divisor(d);
  c.validate_divisor(e);
  if (!e.effective()) throw InputError("the prescribed divisor must be effective");

  std::vector<Point> bases;
  for (const auto& [p, coef] : e.coeffs()) bases.push_back(p);
  for (const auto& [p, coef] : d.coeffs())
    if (coef < 0) bases.push_back(p);
  Workspace ws(c, bases);

  // effective representative of [d] first
  if (d.degree() < e.degree()) return std::nullopt;
  MgDivisor t = ws.lift(d.positive_part());
  auto subtract_at = [&](const Point& p, long long times) -> bool {
    int pv = ws.vertex_of(p);
    MgPoint mp = MgPoint::at_vertex(pv);
    for (long long i = 0; i < times; ++i) {
      t = mg_reduce(ws.graph(), t, pv);
      if (mg_coeff(t, mp) < 1) return false;
      mg_add(t, mp, -1);
    }
    return true;
  };
  for (const auto& [p, coef] : d.coeffs())
    if (coef < 0 && !subtract_at(p, -coef)) return std::nullopt;
  for (const auto& [p, coef] : e.coeffs())
    if (!subtract_at(p, coef)) return std::nullopt;
  return ws.lower(t) + e;
}

std::optional<Divisor> representative_containing(const MetrizedComplex& c, const Divisor& d,
                                                 const Divisor& e,
                                                 const std::map<int, int>& component_ranks) {
  std::optional<Divisor> rep = representative_containing(c, d, e);
  if (!rep) return std::nullopt;
  for (const auto& [v, rv] : component_ranks) {
    if (v < 0 || v >= c.vertex_count()) throw InputError("unknown component vertex");
    long long on_component = 0;
    for (const auto& [p, coef] : rep->coeffs())
      if (p.kind != PointKind::Edge && p.id == v) on_component += coef;
    if (on_component < rv) return std::nullopt;
  }
  return rep;
}

RiemannRochReport verify_riemann_roch(const MetrizedComplex& c, const Divisor& d) {
  RiemannRochReport rep;
  rep.degree = d.degree();
  rep.rank_d = rank(c, d).rank;
  rep.rank_residual = rank(c, canonical_divisor(c) - d).rank;
  rep.lhs = rep.rank_d - rep.rank_residual;
  rep.rhs = rep.degree - c.genus() + 1;
  rep.holds = rep.lhs == rep.rhs;
  return rep;
}

CliffordReport verify_clifford(const MetrizedComplex& c, const Divisor& d) {
  CliffordReport rep;
  rep.degree = d.degree();
  rep.rank_d = rank(c, d).rank;
  rep.rank_residual = rank(c, canonical_divisor(c) - d).rank;
  rep.special = rep.rank_d >= 0 && rep.rank_residual >= 0;
  rep.holds = !rep.special || rep.degree >= 2 * rep.rank_d;
  return rep;
}

}  // namespace tdw
