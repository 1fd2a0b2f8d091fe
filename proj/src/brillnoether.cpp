#include "tdw/brillnoether.hpp"

#include <functional>

#include "tdw/errors.hpp"
#include "tdw/hyperelliptic.hpp"
#include "tdw/rank.hpp"

namespace tdw {

namespace {

void require_graph_only(const MetrizedComplex& c) {
  for (int v = 0; v < c.vertex_count(); ++v)
    if (c.genus_of_vertex(v) != 0)
      throw InputError("Brill-Noether ranks are computed on graphs (all components genus 0)");
}

// Visits multisets of size k over the point list; stop by returning false.
bool each_multiset(const std::vector<Point>& pts, long long k,
                   std::vector<Point>& cur,
                   const std::function<bool(const std::vector<Point>&)>& visit,
                   std::size_t from = 0) {
  if (k == 0) return visit(cur);
  for (std::size_t i = from; i < pts.size(); ++i) {
    cur.push_back(pts[i]);
    bool keep = each_multiset(pts, k - 1, cur, visit, i);
    cur.pop_back();
    if (!keep) return false;
  }
  return true;
}

Divisor to_divisor(const std::vector<Point>& pts) {
  Divisor d;
  for (const auto& p : pts) d.add(p, 1);
  return d;
}

}  // namespace

std::vector<Point> lattice_points(const MetrizedComplex& c, long long ell) {
  require_graph_only(c);
  if (ell < 1) throw InputError("refinement level must be positive");
  std::vector<Point> pts;
  for (int v = 0; v < c.vertex_count(); ++v) pts.push_back(Point::vertex(v));
  for (int e = 0; e < c.edge_count(); ++e) {
    Rational steps = c.edges()[e].length * Rational(ell);
    if (!steps.is_integer())
      throw InputError("edge '" + c.edges()[e].name + "' is not on the 1/" +
                       std::to_string(ell) + " lattice");
    for (long long k = 1; k < steps.num(); ++k)
      pts.push_back(Point::on_edge(e, Rational(k, ell)));
  }
  return pts;
}

bool contained_in_rank_class(const MetrizedComplex& c, const Divisor& e, long long d, int r,
                             long long ell) {
  require_graph_only(c);
  if (!e.effective()) throw InputError("the contained divisor must be effective");
  if (e.degree() > d) throw InputError("deg(E) exceeds d");
  std::vector<Point> pts = lattice_points(c, ell);
  bool found = false;
  std::vector<Point> cur;
  each_multiset(pts, d - e.degree(), cur, [&](const std::vector<Point>& f) {
    if (rank(c, e + to_divisor(f)).rank >= r) {
      found = true;
      return false;
    }
    return true;
  });
  return found;
}

BnResult bn_rank(const MetrizedComplex& c, long long d, int r, long long ell) {
  require_graph_only(c);
  if (r < 0 || d < r) throw InputError("bn_rank needs 0 <= r <= d");
  std::vector<Point> pts = lattice_points(c, ell);

  BnResult res;
  res.refine_level = ell;

  auto level_holds = [&](long long rho, std::vector<Divisor>* fails) {
    long long deg_e = r + rho;
    if (deg_e < 0) return true;  // no effective divisors of negative degree
    bool all = true;
    std::vector<Point> cur;
    each_multiset(pts, deg_e, cur, [&](const std::vector<Point>& epts) {
      Divisor e = to_divisor(epts);
      if (!contained_in_rank_class(c, e, d, r, ell)) {
        all = false;
        if (fails && fails->size() < 3) {
          fails->push_back(e);
          return true;  // keep collecting a few witnesses
        }
        return false;
      }
      return true;
    });
    return all;
  };

  long long rho = -1;
  if (!level_holds(rho, &res.failures)) {
    res.rho = -1;
    res.floored = true;
  } else {
    while (rho + 1 <= d - r) {
      res.failures.clear();
      if (!level_holds(rho + 1, &res.failures)) break;
      ++rho;
    }
    res.rho = static_cast<int>(rho);
  }

  if (0 < 2 * r && 2 * r <= d && d < c.genus() && !res.floored) {
    StructureReport sc = structure_check(c);
    res.exact = sc.pass && res.rho == static_cast<int>(d - 2 * r);
  }
  return res;
}

MartensReport martens_check(const MetrizedComplex& c, long long d, int r, long long ell) {
  require_graph_only(c);
  if (!(0 < 2 * r && 2 * r <= d && d < c.genus()))
    throw InputError("martens_check needs 0 < 2r <= d < g");
  MartensReport rep;
  rep.bn = bn_rank(c, d, r, ell);
  rep.bound = d - 2 * r;
  rep.bound_ok = rep.bn.rho <= rep.bound;
  rep.hyperelliptic = structure_check(c).pass;
  rep.equality = rep.bn.rho == static_cast<int>(rep.bound);
  rep.hyperelliptic_equality_ok = !rep.hyperelliptic || rep.equality;
  rep.conjecture_instance = rep.equality && !rep.hyperelliptic;
  return rep;
}

}  // namespace tdw
