#include "tdw/dhar.hpp"

#include <algorithm>
#include <stdexcept>

namespace tdw {

namespace {

// Mutable burning state over one graph + chip configuration.
struct Burner {
  const MetricGraph& g;
  std::vector<long long> vchips;                              // per vertex
  std::vector<std::vector<std::pair<Rational, long long>>> echips;  // per edge, sorted
  std::vector<char> burnt;
  std::vector<int> hot_ends;  // burnt edge-ends incident to a vertex
  std::vector<char> ign_a, ign_b, merged;
  std::vector<Rational> pos_a, pos_b;
  int q;

  Burner(const MetricGraph& graph, const MgDivisor& d, int base) : g(graph), q(base) {
    vchips.assign(g.vertex_count, 0);
    echips.resize(g.edges.size());
    for (const auto& [p, c] : d) {
      if (p.is_vertex()) {
        vchips[p.vertex] = c;
      } else {
        echips[p.edge].emplace_back(p.offset, c);
      }
      bool at_base = p.is_vertex() && p.vertex == base;
      if (c < 0 && !at_base)
        throw std::invalid_argument("divisor not effective away from the base point");
    }
    for (auto& v : echips) std::sort(v.begin(), v.end());
    burnt.assign(g.vertex_count, 0);
    hot_ends.assign(g.vertex_count, 0);
    ign_a.assign(g.edges.size(), 0);
    ign_b.assign(g.edges.size(), 0);
    merged.assign(g.edges.size(), 0);
    pos_a.assign(g.edges.size(), Rational(0));
    pos_b.assign(g.edges.size(), Rational(0));
    for (std::size_t e = 0; e < g.edges.size(); ++e) pos_b[e] = g.edges[e].len;
  }

  void run() {
    burn_vertex(q);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        if (merged[e]) continue;
        if (ign_a[e] && advance(e, /*from_a=*/true)) changed = true;
        if (merged[e]) continue;
        if (ign_b[e] && advance(e, /*from_a=*/false)) changed = true;
      }
      for (int v = 0; v < g.vertex_count; ++v) {
        if (!burnt[v] && vchips[v] < hot_ends[v]) {
          burn_vertex(v);
          changed = true;
        }
      }
    }
  }

  void burn_vertex(int v) {
    burnt[v] = 1;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
      if (g.edges[e].a == v && !ign_a[e]) ign_a[e] = 1;
      if (g.edges[e].b == v && !ign_b[e]) ign_b[e] = 1;
    }
  }

  // Fire arriving at the far end of edge e marks that end hot and may
  // burn the vertex there on the next sweep.
  void arrive(int e, bool at_b) {
    int v = at_b ? g.edges[e].b : g.edges[e].a;
    hot_ends[v] += 1;
  }

  // Extends the fire on edge e from one side. Returns true on progress.
  bool advance(int e, bool from_a) {
    const Rational len = g.edges[e].len;
    auto& chips = echips[e];
    bool other_ign = from_a ? ign_b[e] : ign_a[e];
    Rational mine = from_a ? pos_a[e] : pos_b[e];
    Rational other = from_a ? pos_b[e] : pos_a[e];
    bool progressed = false;
    while (true) {
      // next chip at or beyond the frontier, walking away from our side
      long long count = 0;
      Rational x;
      bool found = false;
      if (from_a) {
        for (const auto& [off, c] : chips) {
          if (off >= mine && c > 0) { x = off; count = c; found = true; break; }
        }
      } else {
        for (auto it = chips.rbegin(); it != chips.rend(); ++it) {
          if (it->first <= mine && it->second > 0) { x = it->first; count = it->second; found = true; break; }
        }
      }
      if (found) {
        bool both = other_ign && (from_a ? (other <= x) : (other >= x));
        long long needed = both ? 2 : 1;
        if (count >= needed) {
          if (x != mine) progressed = true;
          mine = x;
          break;
        }
        // chip overrun; fire passes through
        if (both) {
          merged[e] = 1;
          progressed = true;
          break;
        }
        mine = x;
        progressed = true;
        // skip past this chip and keep going
        if (from_a) {
          Rational next = len;
          bool more = false;
          for (const auto& [off, c] : chips)
            if (off > x && c > 0) { next = off; more = true; break; }
          if (!more) { reach_far(e, from_a, other_ign); mine = len; break; }
          mine = next;  // loop re-evaluates blocking at the next chip
          continue;
        } else {
          Rational next = 0;
          bool more = false;
          for (auto it = chips.rbegin(); it != chips.rend(); ++it)
            if (it->first < x && it->second > 0) { next = it->first; more = true; break; }
          if (!more) { reach_far(e, from_a, other_ign); mine = Rational(0); break; }
          mine = next;
          continue;
        }
      } else {
        // no chips ahead at all
        if (other_ign) {
          merged[e] = 1;
        } else if (mine != (from_a ? len : Rational(0))) {
          reach_far(e, from_a, other_ign);
          mine = from_a ? len : Rational(0);
        } else {
          break;  // already at the far end
        }
        progressed = true;
        break;
      }
    }
    if (from_a) {
      if (pos_a[e] != mine) { pos_a[e] = mine; }
    } else {
      if (pos_b[e] != mine) { pos_b[e] = mine; }
    }
    return progressed;
  }

  void reach_far(int e, bool from_a, bool other_ign) {
    if (other_ign) {
      merged[e] = 1;
    } else {
      arrive(e, /*at_b=*/from_a);
    }
  }
};

}  // namespace

bool MgBurnResult::unburnt_interval(const MetricGraph& g, int e, Rational* lo, Rational* hi) const {
  if (interior_all_burnt[e]) return false;
  Rational a = ignited_a[e] ? pos_a[e] : Rational(0);
  Rational b = ignited_b[e] ? pos_b[e] : g.edges[e].len;
  if (a > b) return false;
  *lo = a;
  *hi = b;
  return true;
}

MgBurnResult mg_burn(const MetricGraph& g, const MgDivisor& d, int q) {
  if (q < 0 || q >= g.vertex_count) throw std::invalid_argument("base vertex out of range");
  Burner burner(g, d, q);
  burner.run();

  MgBurnResult res;
  res.vertex_burnt.assign(burner.burnt.begin(), burner.burnt.end());
  res.ignited_a = {burner.ign_a.begin(), burner.ign_a.end()};
  res.ignited_b = {burner.ign_b.begin(), burner.ign_b.end()};
  res.pos_a = burner.pos_a;
  res.pos_b = burner.pos_b;
  res.interior_all_burnt.assign(g.edges.size(), 0);

  bool all_burnt = true;
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    bool full = burner.merged[e];
    if (!full && burner.ign_a[e] && burner.pos_a[e] == g.edges[e].len) full = true;
    if (!full && burner.ign_b[e] && burner.pos_b[e] == Rational(0)) full = true;
    if (full) {
      res.interior_all_burnt[e] = 1;
    } else {
      Rational lo = burner.ign_a[e] ? burner.pos_a[e] : Rational(0);
      Rational hi = burner.ign_b[e] ? burner.pos_b[e] : g.edges[e].len;
      if (lo < hi || (lo == hi && lo > Rational(0) && lo < g.edges[e].len)) all_burnt = false;
      else res.interior_all_burnt[e] = 1;
    }
  }
  for (int v = 0; v < g.vertex_count; ++v)
    if (!burner.burnt[v]) all_burnt = false;
  res.reduced = all_burnt;
  if (res.reduced) return res;

  // Assemble the maximal firing step: one chip per boundary direction,
  // epsilon capped by the nearest chip or vertex along each direction.
  struct Dir {
    MgPoint source;
    int edge;
    bool towards_b;   // direction of travel in edge coordinates
    Rational start;   // offset the chip departs from
    Rational limit;   // distance to the first event along the direction
  };
  std::vector<Dir> dirs;

  auto nearest_event = [&](int e, const Rational& from, bool towards_b) {
    const auto& chips = burner.echips[e];
    if (towards_b) {
      for (const auto& [off, c] : chips)
        if (off > from && c > 0) return off - from;
      return g.edges[e].len - from;
    }
    for (auto it = chips.rbegin(); it != chips.rend(); ++it)
      if (it->first < from && it->second > 0) return from - it->first;
    return from;
  };

  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    if (res.interior_all_burnt[e]) continue;
    Rational lo, hi;
    if (!res.unburnt_interval(g, e, &lo, &hi)) continue;
    if (burner.ign_a[e] && lo > Rational(0)) {
      Dir d0{MgPoint::on_edge(e, lo), e, false, lo, nearest_event(e, lo, false)};
      dirs.push_back(d0);
    }
    if (burner.ign_b[e] && hi < g.edges[e].len) {
      Dir d0{MgPoint::on_edge(e, hi), e, true, hi, nearest_event(e, hi, true)};
      dirs.push_back(d0);
    }
  }
  for (int v = 0; v < g.vertex_count; ++v) {
    if (burner.burnt[v] || burner.hot_ends[v] == 0) continue;
    // an unburnt vertex fires one chip into every hot end
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
      bool hot_at_a = g.edges[e].a == v && burner.ign_b[e] && burner.pos_b[e] == Rational(0) &&
                      !burner.merged[e];
      bool hot_at_b = g.edges[e].b == v && burner.ign_a[e] && burner.pos_a[e] == g.edges[e].len &&
                      !burner.merged[e];
      if (hot_at_a)
        dirs.push_back({MgPoint::at_vertex(v), e, true, Rational(0), nearest_event(e, Rational(0), true)});
      if (hot_at_b)
        dirs.push_back({MgPoint::at_vertex(v), e, false, g.edges[e].len,
                        nearest_event(e, g.edges[e].len, false)});
    }
  }
  if (dirs.empty()) throw std::logic_error("non-reduced burn state produced no firing direction");

  Rational eps = dirs[0].limit;
  for (const auto& d0 : dirs) eps = std::min(eps, d0.limit);
  res.epsilon = eps;
  for (const auto& d0 : dirs) {
    Rational target = d0.towards_b ? d0.start + eps : d0.start - eps;
    MgPoint to;
    if (target == Rational(0)) to = MgPoint::at_vertex(g.edges[d0.edge].a);
    else if (target == g.edges[d0.edge].len) to = MgPoint::at_vertex(g.edges[d0.edge].b);
    else to = MgPoint::on_edge(d0.edge, target);
    res.moves.push_back({d0.source, to});
  }
  return res;
}

MgDivisor mg_reduce(const MetricGraph& g, MgDivisor d, int q) {
  for (long long guard = 0;; ++guard) {
    if (guard > 4'000'000) throw std::logic_error("reduction failed to terminate");
    MgBurnResult br = mg_burn(g, d, q);
    if (br.reduced) return d;
    for (const auto& mv : br.moves) {
      mg_add(d, mv.from, -1);
      mg_add(d, mv.to, +1);
    }
  }
}

}  // namespace tdw
