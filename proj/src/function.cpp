#include "tdw/function.hpp"

#include "tdw/errors.hpp"

namespace tdw {

namespace {

// Slope of the segment between two profile points; throws unless it is
// an integer.
long long integer_slope(const Rational& p0, const Rational& v0, const Rational& p1,
                        const Rational& v1) {
  Rational s = (v1 - v0) / (p1 - p0);
  if (!s.is_integer()) throw InputError("non-integer slope " + s.str() + " in graph part");
  return s.num();
}

}  // namespace

ComplexFunction::ComplexFunction(const MetrizedComplex& c, std::vector<Rational> vertex_values,
                                 std::vector<EdgeProfile> profiles,
                                 std::map<int, Divisor> component_parts)
    : vertex_values_(std::move(vertex_values)),
      profiles_(std::move(profiles)),
      component_parts_(std::move(component_parts)) {
  if (static_cast<int>(vertex_values_.size()) != c.vertex_count())
    throw InputError("graph part needs a value for every vertex");
  if (profiles_.empty()) profiles_.assign(c.edge_count(), {});
  if (static_cast<int>(profiles_.size()) != c.edge_count())
    throw InputError("graph part needs a profile for every edge");

  for (int e = 0; e < c.edge_count(); ++e) {
    const EdgeData& ed = c.edges()[e];
    // assembled run of (position, value) from endpoint a to endpoint b
    std::vector<std::pair<Rational, Rational>> run;
    run.emplace_back(Rational(0), vertex_values_[ed.a]);
    for (const auto& br : profiles_[e].breaks) {
      if (!(br.first > run.back().first) || !(br.first < ed.length))
        throw InputError("breakpoints of edge '" + ed.name +
                         "' must be sorted and interior");
      run.push_back(br);
    }
    run.emplace_back(ed.length, vertex_values_[ed.b]);

    std::vector<long long> slopes;
    for (std::size_t i = 0; i + 1 < run.size(); ++i)
      slopes.push_back(
          integer_slope(run[i].first, run[i].second, run[i + 1].first, run[i + 1].second));

    // interior breaks: incoming slopes from both sides
    for (std::size_t i = 1; i + 1 < run.size(); ++i)
      div_.add(Point::on_edge(e, run[i].first), slopes[i - 1] - slopes[i]);

    // edge ends: incoming slope lands at the vertex or at the end's node
    auto deposit = [&](int v, const std::optional<Rational>& node, long long incoming) {
      if (c.genus_of_vertex(v) == 0)
        div_.add(Point::vertex(v), incoming);
      else
        div_.add(Point::on_component(v, *node), incoming);
    };
    deposit(ed.a, ed.node_a, -slopes.front());
    deposit(ed.b, ed.node_b, slopes.back());

    auto shift_at = [&](int v, const std::optional<Rational>& node, long long incoming) {
      if (c.genus_of_vertex(v) == 1 && incoming != 0)
        shifts_[v] = ((shifts_.count(v) ? shifts_[v] : Rational(0)) +
                      Rational(incoming) * node->mod1())
                         .mod1();
    };
    shift_at(ed.a, ed.node_a, -slopes.front());
    shift_at(ed.b, ed.node_b, slopes.back());
  }

  for (const auto& [v, part] : component_parts_) {
    if (v < 0 || v >= c.vertex_count()) throw InputError("component part at unknown vertex");
    if (part.degree() != 0) throw InputError("component part must have degree 0");
    Rational sum = 0;
    for (const auto& [p, coef] : part.coeffs()) {
      if (p.kind != PointKind::Component || p.id != v)
        throw InputError("component part contains a point outside its component");
      if (c.genus_of_vertex(v) == 1) sum = (sum + Rational(coef) * p.pos).mod1();
    }
    if (c.genus_of_vertex(v) == 1 && !sum.is_zero())
      throw InputError("component part is not principal: coordinate sum " + sum.str());
    div_ = div_ + part;
  }

  if (div_.degree() != 0) throw std::logic_error("principal divisor has nonzero degree");
}

ComplexFunction ComplexFunction::constant(const MetrizedComplex& c, const Rational& value) {
  return ComplexFunction(c, std::vector<Rational>(c.vertex_count(), value), {});
}

Rational ComplexFunction::component_shift(int vertex) const {
  auto it = shifts_.find(vertex);
  return it == shifts_.end() ? Rational(0) : it->second;
}

ComplexFunction ComplexFunction::negated(const MetrizedComplex& c) const {
  std::vector<Rational> vv;
  for (const auto& v : vertex_values_) vv.push_back(-v);
  std::vector<EdgeProfile> ps;
  for (const auto& pr : profiles_) {
    EdgeProfile q;
    for (const auto& [pos, val] : pr.breaks) q.breaks.emplace_back(pos, -val);
    ps.push_back(q);
  }
  std::map<int, Divisor> parts;
  for (const auto& [v, part] : component_parts_) parts[v] = Divisor() - part;
  return ComplexFunction(c, std::move(vv), std::move(ps), std::move(parts));
}

Divisor apply_function(const MetrizedComplex& c, const Divisor& d, const ComplexFunction& f) {
  c.validate_divisor(d);
  return d + f.principal_divisor();
}

}  // namespace tdw
