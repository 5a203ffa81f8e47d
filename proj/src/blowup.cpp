#include "lojex/blowup.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace lojex {

std::string Chart::describe_pullback() const {
  std::string out;
  for (std::size_t i = 0; i < pullback.source().size(); ++i) {
    if (i) out += ", ";
    out += pullback.source().name(i) + " -> " + pullback.image(i).to_string();
  }
  return out;
}

Chart root_chart(const Ambient& base) {
  return Chart{"root", base, Substitution::identity(base), {}, "", {}};
}

std::vector<Chart> blow_up(const Chart& chart, const std::vector<std::size_t>& center, DivisorId new_divisor) {
  if (center.size() < 2) throw std::invalid_argument("blow-up center needs at least two variables");
  std::set<std::size_t> distinct(center.begin(), center.end());
  if (distinct.size() != center.size()) throw std::invalid_argument("repeated variable in blow-up center");
  for (std::size_t v : center)
    if (v >= chart.ambient.size()) throw std::invalid_argument("center variable out of range");
  if (chart.divisors.count(new_divisor)) throw std::invalid_argument("divisor id already in use");

  const Ambient& amb = chart.ambient;
  std::vector<Chart> out;
  for (std::size_t v : center) {
    std::vector<Polynomial> images;
    for (std::size_t w = 0; w < amb.size(); ++w) {
      Polynomial img = Polynomial::variable(amb, w);
      if (w != v && distinct.count(w)) img = Polynomial::variable(amb, v) * img;
      images.push_back(std::move(img));
    }
    Substitution local(amb, amb, std::move(images));

    Chart child;
    child.id = chart.id + "." + amb.name(v);
    child.ambient = amb;
    child.pullback = chart.pullback.then(local);
    child.parent = chart.id;
    for (const auto& [sibling, fn] : chart.overlaps) child.overlaps.emplace_back(sibling, local.apply(fn));
    // In the v-chart, w' != 0 is exactly the overlap with the w-chart.
    for (std::size_t w : center)
      if (w != v) child.overlaps.emplace_back(chart.id + "." + amb.name(w), Polynomial::variable(amb, w));
    for (const auto& [id, var] : chart.divisors) {
      // The strict transform of {v = 0} misses the v-chart.
      if (var == v) continue;
      child.divisors.emplace(id, var);
    }
    child.divisors.emplace(new_divisor, v);
    out.push_back(std::move(child));
  }
  return out;
}

// ---------------------------------------------------------------- CoordinateChange

namespace {

// Index k when p = c * x_k for a nonzero constant c (c = 1 if `unit_only`).
std::optional<std::size_t> as_variable(const Polynomial& p, bool unit_only) {
  if (!p.is_monomial() || p.terms()[0].monomial.degree() != 1) return std::nullopt;
  if (unit_only && p.terms()[0].coeff != 1) return std::nullopt;
  const Monomial& m = p.terms()[0].monomial;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] == 1) return i;
  return std::nullopt;
}

bool uses_variable(const Polynomial& p, std::size_t v) {
  return std::any_of(p.terms().begin(), p.terms().end(), [&](const auto& t) { return t.monomial[v] > 0; });
}

Substitution invert(const Substitution& forward) {
  const Ambient& amb = forward.source();
  const std::size_t n = amb.size();
  if (!(forward.target() == amb)) throw std::invalid_argument("coordinate change must map a chart to itself");

  // Permutation of variables.
  std::vector<std::optional<std::size_t>> perm(n);
  bool is_perm = true;
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < n && is_perm; ++i) {
    perm[i] = as_variable(forward.image(i), true);
    is_perm = perm[i].has_value() && seen.insert(*perm[i]).second;
  }
  if (is_perm) {
    std::vector<Polynomial> images(n);
    for (std::size_t i = 0; i < n; ++i) images[*perm[i]] = Polynomial::variable(amb, i);
    return Substitution(amb, amb, std::move(images));
  }

  // Triangular: x_i -> c_i x_i + h_i, c_i a nonzero constant, h_i free of
  // x_i, dependencies acyclic.
  std::vector<Rational> scale;
  std::vector<Polynomial> tails;
  for (std::size_t i = 0; i < n; ++i) {
    Monomial xi(n);
    xi.set(i, 1);
    Rational c = forward.image(i).coefficient(xi);
    Polynomial h = forward.image(i) - c * Polynomial::variable(amb, i);
    if (c == 0 || uses_variable(h, i))
      throw std::invalid_argument("coordinate change is not triangular (variable " + amb.name(i) + ")");
    scale.push_back(c);
    tails.push_back(std::move(h));
  }
  std::vector<int> state(n, 0);  // 0 new, 1 visiting, 2 done
  std::vector<std::optional<Polynomial>> inverse(n);
  std::function<void(std::size_t)> visit = [&](std::size_t i) {
    if (state[i] == 2) return;
    if (state[i] == 1) throw std::invalid_argument("coordinate change is not invertible (cyclic dependency)");
    state[i] = 1;
    std::vector<Polynomial> partial;
    for (std::size_t j = 0; j < n; ++j) {
      if (uses_variable(tails[i], j)) {
        visit(j);
        partial.push_back(*inverse[j]);
      } else {
        partial.push_back(Polynomial::variable(amb, j));
      }
    }
    Substitution through(amb, amb, std::move(partial));
    inverse[i] = (1 / scale[i]) * (Polynomial::variable(amb, i) - through.apply(tails[i]));
    state[i] = 2;
  };
  for (std::size_t i = 0; i < n; ++i) visit(i);
  std::vector<Polynomial> images;
  for (auto& p : inverse) images.push_back(std::move(*p));
  return Substitution(amb, amb, std::move(images));
}

}  // namespace

CoordinateChange::CoordinateChange(Substitution forward) : forward_(std::move(forward)), inverse_(invert(forward_)) {
  auto id = Substitution::identity(forward_.source());
  if (!(forward_.then(inverse_) == id) || !(inverse_.then(forward_) == id))
    throw std::invalid_argument("coordinate change is not invertible");
}

CoordinateChange CoordinateChange::from_map(const Ambient& ambient,
                                           const std::vector<std::pair<std::string, Polynomial>>& images) {
  std::vector<Polynomial> full;
  for (std::size_t i = 0; i < ambient.size(); ++i) full.push_back(Polynomial::variable(ambient, i));
  std::set<std::size_t> seen;
  for (const auto& [name, p] : images) {
    std::size_t i = ambient.require(name);
    if (!seen.insert(i).second) throw std::invalid_argument("variable " + name + " changed twice");
    if (!(p.ambient() == ambient)) throw std::invalid_argument("coordinate change over a different ambient");
    full[i] = p;
  }
  return CoordinateChange(Substitution(ambient, ambient, std::move(full)));
}

bool CoordinateChange::is_identity() const { return forward_ == Substitution::identity(forward_.source()); }

Chart apply_coordinate_change(const Chart& chart, const CoordinateChange& change) {
  if (!(change.forward().source() == chart.ambient)) throw std::invalid_argument("coordinate change over a different ambient");
  Chart out = chart;
  out.pullback = chart.pullback.then(change.forward());
  for (auto& [sibling, fn] : out.overlaps) fn = change.forward().apply(fn);
  out.divisors.clear();
  for (const auto& [id, var] : chart.divisors) {
    auto nv = as_variable(change.forward().image(var), false);
    if (!nv)
      throw std::invalid_argument("coordinate change turns divisor E" + std::to_string(id) + " into " +
                                  change.forward().image(var).to_string());
    out.divisors.emplace(id, *nv);
  }
  return out;
}

// ---------------------------------------------------------------- Transforms

Ideal total_transform(const Chart& chart, const Ideal& base_ideal) {
  if (!(base_ideal.ambient() == chart.pullback.source())) throw std::invalid_argument("ideal over a different ambient");
  std::vector<Polynomial> gens;
  for (const auto& g : base_ideal.generators()) gens.push_back(chart.pullback.apply(g));
  return Ideal(chart.ambient, std::move(gens));
}

std::optional<unsigned> ord_along(const Chart& chart, DivisorId divisor, const Ideal& ideal) {
  auto it = chart.divisors.find(divisor);
  if (it == chart.divisors.end())
    throw std::invalid_argument("divisor E" + std::to_string(divisor) + " is not visible in chart " + chart.id);
  std::optional<unsigned> best;
  for (const auto& g : ideal.generators()) {
    if (g.is_zero()) continue;
    unsigned k = g.min_exponent(it->second);
    if (!best || k < *best) best = k;
  }
  return best;
}

Ideal fiber_ideal(const Chart& chart) {
  return Ideal(chart.ambient, chart.pullback.images().empty()
                                  ? std::vector<Polynomial>{Polynomial(chart.ambient)}
                                  : chart.pullback.images());
}

MonomialityResult is_monomialized(const Chart& chart, const Ideal& ideal) {
  MonomialityResult result;
  Monomial m(chart.ambient.size());
  for (const auto& [id, var] : chart.divisors) {
    auto k = ord_along(chart, id, ideal);
    unsigned value = k.value_or(0);
    result.multiplicities[id] = value;
    m.set(var, m[var] + value);
  }
  std::vector<Polynomial> cof;
  for (const auto& g : ideal.generators()) {
    if (g.is_zero()) continue;
    cof.push_back(g.divide_by_monomial(m));
  }
  if (cof.empty()) {
    // The zero ideal is not a monomial.
    result.cofactor = Ideal(chart.ambient, {Polynomial(chart.ambient)});
    return result;
  }
  result.cofactor = Ideal(chart.ambient, cof);
  // A constant cofactor generator settles it without Groebner work.
  bool unit = std::any_of(cof.begin(), cof.end(), [](const Polynomial& p) { return p.is_constant(); });
  if (!unit) unit = sum(*result.cofactor, fiber_ideal(chart)).is_unit();
  result.monomial = unit;
  return result;
}

}  // namespace lojex
