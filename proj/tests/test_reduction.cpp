#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracle_graph.hpp"
#include "tdw/errors.hpp"
#include "tdw/reduction.hpp"

using namespace fixtures;
using tdw::Divisor;
using tdw::Point;
using tdw::Rational;

namespace {

Point theta_m1() { return Point::on_edge(0, Rational(1, 2)); }

// uniform random effective divisor supported on the (1/ell)-lattice
Divisor random_lattice_divisor(const tdw::MetrizedComplex& c, long long ell, int chips,
                               std::mt19937_64& rng) {
  Divisor d;
  std::uniform_int_distribution<int> pick_kind(0, 2);
  for (int i = 0; i < chips; ++i) {
    for (;;) {
      int kind = pick_kind(rng);
      if (kind == 0) {
        std::uniform_int_distribution<int> pv(0, c.vertex_count() - 1);
        int v = pv(rng);
        if (c.genus_of_vertex(v) == 0) {
          d.add(Point::vertex(v), 1);
          break;
        }
        std::uniform_int_distribution<long long> pc(0, ell - 1);
        d.add(Point::on_component(v, Rational(pc(rng), ell)), 1);
        break;
      }
      if (kind == 1 && c.edge_count() > 0) {
        std::uniform_int_distribution<int> pe(0, c.edge_count() - 1);
        int e = pe(rng);
        long long steps = (c.edges()[e].length * Rational(ell)).num();
        if (steps < 2) continue;
        std::uniform_int_distribution<long long> po(1, steps - 1);
        d.add(Point::on_edge(e, Rational(po(rng), ell)), 1);
        break;
      }
      if (kind == 2) {
        bool has_g1 = false;
        for (int v = 0; v < c.vertex_count(); ++v) has_g1 |= c.genus_of_vertex(v) == 1;
        if (!has_g1) continue;
        std::uniform_int_distribution<int> pv(0, c.vertex_count() - 1);
        int v = pv(rng);
        if (c.genus_of_vertex(v) != 1) continue;
        std::uniform_int_distribution<long long> pc(0, ell - 1);
        d.add(Point::on_component(v, Rational(pc(rng), ell)), 1);
        break;
      }
    }
  }
  return d;
}

}  // namespace

TEST_CASE("dhar burn on theta") {
  auto th = theta();

  // 2*m1 based at m1: everything burns, so the divisor is reduced
  auto res = tdw::dhar_burn(th, dv({{theta_m1(), 2}}), theta_m1());
  CHECK(res.reduced);

  // v1 + v2 based at m1: each vertex blocks with one chip against one
  // burnt end, so v1, v2 and the other two edges stay unburnt
  auto res2 = tdw::dhar_burn(th, dv({{Point::vertex(0), 1}, {Point::vertex(1), 1}}), theta_m1());
  CHECK(!res2.reduced);
  CHECK(res2.unburnt_vertices.size() == 2);
  // e2 and e3 are entirely unburnt
  bool e2_full = false, e3_full = false;
  for (const auto& seg : res2.unburnt_segments) {
    if (seg.from == Point::vertex(0) && seg.to == Point::vertex(1)) {
      e2_full = true;
      e3_full = e2_full && e3_full ? true : e3_full;
    }
  }
  CHECK(res2.unburnt_segments.size() == 2);
  (void)e2_full;
  (void)e3_full;
  CHECK(res2.epsilon > Rational(0));
  CHECK(res2.moves.size() == 2);

  // the zero divisor: everything burns from any base
  CHECK(tdw::dhar_burn(th, Divisor(), Point::vertex(0)).reduced);

  CHECK_THROWS_AS(tdw::dhar_burn(th, dv({{Point::vertex(0), -1}}), theta_m1()),
                  tdw::InputError);
}

TEST_CASE("reduce_at on theta matches the oracle") {
  auto th = theta();
  auto d = dv({{Point::vertex(0), 1}, {Point::vertex(1), 1}});
  auto red = tdw::reduce_at(th, d, theta_m1());
  CHECK(red == dv({{theta_m1(), 2}}));

  // cross-check with the finite-graph oracle on the half-lattice
  oracle::Subdivision sub(th, 2);
  auto od = oracle::reduce(sub.graph(), sub.divisor(d), sub.vertex_for(theta_m1()));
  CHECK(od == sub.divisor(red));
}

TEST_CASE("reduce_at fixes an already reduced divisor") {
  auto lp = fixtures::loop();
  Point third = Point::on_edge(0, Rational(1, 3));
  auto d = dv({{third, 1}});
  CHECK(tdw::reduce_at(lp, d, third) == d);
}

TEST_CASE("reduce_at is idempotent on random lattice divisors") {
  std::mt19937_64 rng(0xd1ce5);
  for (int iter = 0; iter < 25; ++iter) {
    for (const auto& c : {theta(), b4(), fig1()}) {
      auto d = random_lattice_divisor(c, 4, 3, rng);
      Point q = c.base_point();
      auto r1 = tdw::reduce_at(c, d, q);
      auto r2 = tdw::reduce_at(c, r1, q);
      CHECK(r1 == r2);
      CHECK(tdw::is_equivalent(c, d, r1));
    }
  }
}

TEST_CASE("reduce_at handles divisors with negative chips") {
  auto th = theta();
  auto d = dv({{Point::vertex(0), 1}, {Point::vertex(1), 1}, {theta_m1(), -1}});
  auto red = tdw::reduce_at(th, d, theta_m1());
  CHECK(red == dv({{theta_m1(), 1}}));

  // a class with no effective representative reduces to a divisor that
  // is negative at the base
  auto neg = dv({{Point::on_edge(0, Rational(1, 3)), -1}});
  auto nred = tdw::reduce_at(th, neg, theta_m1());
  CHECK(nred.degree() == -1);
  CHECK(!nred.effective());
  CHECK(tdw::is_equivalent(th, neg, nred));
}

TEST_CASE("is_equivalent on fig1: the example chain") {
  auto f = fig1();
  Fig1Points pts;
  auto pair = [&](const Point& a, const Point& b) { return dv({{a, 1}, {b, 1}}); };

  CHECK(tdw::is_equivalent(f, pair(pts.p1, pts.q1), pair(pts.p3, pts.q3)));
  CHECK(tdw::is_equivalent(f, pair(pts.p1, pts.q1), pair(pts.p2, pts.q2)));
  CHECK(tdw::is_equivalent(f, pair(pts.p2, pts.q2), pair(pts.p, pts.q)));
  CHECK(tdw::is_equivalent(f, pair(pts.p3, pts.q3), pair(pts.p4, pts.q4)));
  CHECK(tdw::is_equivalent(f, pair(pts.p1, pts.q1), dv({{pts.x, 2}})));
  CHECK(!tdw::is_equivalent(f, pair(pts.p1, pts.q2), pair(pts.p2, pts.q1)));
}

TEST_CASE("is_equivalent on the loop matches circle-group sums") {
  auto lp = fixtures::loop();
  auto pt = [&](long long n, long long d) { return Point::on_edge(0, Rational(n, d)); };

  CHECK(!tdw::is_equivalent(lp, dv({{pt(1, 3), 1}}), dv({{pt(2, 3), 1}})));
  CHECK(tdw::is_equivalent(lp, dv({{Point::vertex(0), 1}, {pt(1, 2), 1}}),
                           dv({{pt(1, 8), 1}, {pt(3, 8), 1}})));
  // cross-check both on oracle lattices of matching granularity
  oracle::Subdivision sub3(lp, 3);
  CHECK(oracle::equivalent(sub3.graph(), sub3.divisor(dv({{pt(1, 3), 1}})),
                           sub3.divisor(dv({{pt(2, 3), 1}}))) ==
        tdw::is_equivalent(lp, dv({{pt(1, 3), 1}}), dv({{pt(2, 3), 1}})));
  oracle::Subdivision sub8(lp, 8);
  CHECK(oracle::equivalent(sub8.graph(),
                           sub8.divisor(dv({{Point::vertex(0), 1}, {pt(1, 2), 1}})),
                           sub8.divisor(dv({{pt(1, 8), 1}, {pt(3, 8), 1}}))));
}

TEST_CASE("is_equivalent is an equivalence relation on samples") {
  std::mt19937_64 rng(0xabcde);
  auto f = fig1();
  std::vector<Divisor> ds;
  for (int i = 0; i < 6; ++i) ds.push_back(random_lattice_divisor(f, 4, 2, rng));
  for (const auto& a : ds) CHECK(tdw::is_equivalent(f, a, a));
  for (const auto& a : ds)
    for (const auto& b : ds) {
      bool ab = tdw::is_equivalent(f, a, b);
      CHECK(ab == tdw::is_equivalent(f, b, a));
      if (!ab) continue;
      for (const auto& c : ds)
        if (tdw::is_equivalent(f, b, c)) CHECK(tdw::is_equivalent(f, a, c));
    }
}

TEST_CASE("effective_representative") {
  auto th = theta();
  auto d = dv({{Point::vertex(0), 1}, {Point::vertex(1), 1}});
  CHECK(tdw::effective_representative(th, d) == d);  // already effective

  auto sub = dv({{Point::vertex(0), 1}, {Point::vertex(1), 1}, {theta_m1(), -1}});
  auto rep = tdw::effective_representative(th, sub);
  REQUIRE(rep.has_value());
  CHECK(rep->effective());
  CHECK(tdw::is_equivalent(th, *rep, sub));
  CHECK(*rep == dv({{theta_m1(), 1}}));

  auto lp = fixtures::loop();
  auto bad = dv({{Point::on_edge(0, Rational(1, 3)), 1}, {Point::on_edge(0, Rational(2, 3)), -1}});
  CHECK(!tdw::effective_representative(lp, bad).has_value());
}

TEST_CASE("effective_representative agrees with reduction at the base") {
  std::mt19937_64 rng(0xfeed);
  auto f = fig1();
  Point q0 = f.base_point();
  for (int i = 0; i < 20; ++i) {
    auto a = random_lattice_divisor(f, 4, 2, rng);
    auto b = random_lattice_divisor(f, 4, 2, rng);
    Divisor d = a - b;
    bool has = tdw::effective_representative(f, d).has_value();
    auto red = tdw::reduce_at(f, d, q0);
    CHECK(has == red.effective());
  }
}

TEST_CASE("is_rigid") {
  auto th = theta();
  CHECK(tdw::is_rigid(th, dv({{Point::vertex(0), 1}})));
  CHECK(!tdw::is_rigid(th, dv({{Point::vertex(0), 1}, {Point::vertex(1), 1}})));

  auto lp = fixtures::loop();
  CHECK(tdw::is_rigid(lp, dv({{Point::on_edge(0, Rational(1, 3)), 1}})));

  CHECK_THROWS_AS(tdw::is_rigid(th, dv({{Point::vertex(0), -1}})), tdw::InputError);
}

TEST_CASE("reduction agrees with the oracle on random lattice divisors") {
  std::mt19937_64 rng(0x5eed);
  for (const auto& c : {theta(), b4(), k4(), fig1()}) {
    oracle::Subdivision sub(c, 2);
    for (int i = 0; i < 10; ++i) {
      auto a = random_lattice_divisor(c, 2, 3, rng);
      auto b = random_lattice_divisor(c, 2, 3, rng);
      CHECK(tdw::is_equivalent(c, a, b) ==
            oracle::equivalent(sub.graph(), sub.divisor(a), sub.divisor(b)));
    }
  }
}
