#include <algorithm>
#include <numeric>

#include "lojex/detail/int_poly.hpp"
#include "lojex/ideal.hpp"

namespace lojex {

// ---------------------------------------------------------------- MonomialOrder

MonomialOrder::MonomialOrder(OrderKind kind, std::vector<std::size_t> priority)
    : kind_(kind), priority_(std::move(priority)) {
  std::vector<std::size_t> sorted = priority_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw std::invalid_argument("variable priority is not a permutation");
}

MonomialOrder MonomialOrder::grevlex(std::size_t nvars) {
  std::vector<std::size_t> p(nvars);
  std::iota(p.begin(), p.end(), 0);
  return MonomialOrder(OrderKind::grevlex, std::move(p));
}

MonomialOrder MonomialOrder::lex(std::size_t nvars) {
  std::vector<std::size_t> p(nvars);
  std::iota(p.begin(), p.end(), 0);
  return MonomialOrder(OrderKind::lex, std::move(p));
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (kind_ == OrderKind::grevlex) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (std::size_t k = priority_.size(); k-- > 0;) {
      std::size_t v = priority_[k];
      if (a[v] != b[v]) return a[v] > b[v] ? -1 : 1;
    }
    return 0;
  }
  for (std::size_t v : priority_)
    if (a[v] != b[v]) return a[v] < b[v] ? -1 : 1;
  return 0;
}

// ---------------------------------------------------------------- IntPoly

namespace detail {

IntPoly to_int_poly(const Polynomial& p, const MonomialOrder& order) {
  Integer den = 1;
  for (const auto& t : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
  IntPoly out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({t.monomial, t.coeff.get_num() * (den / t.coeff.get_den())});
  std::sort(out.begin(), out.end(),
            [&](const IntTerm& a, const IntTerm& b) { return order.compare(a.monomial, b.monomial) > 0; });
  make_primitive(out);
  return out;
}

namespace {

Integer content(const IntPoly& p, std::size_t from = 0) {
  Integer g = 0;
  for (std::size_t i = from; i < p.size(); ++i) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), p[i].coeff.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

// a*h[from..] - b*(m*g)[1..], assuming the leading terms cancel.
IntPoly combine(const IntPoly& h, std::size_t from, const Integer& a, const Integer& b,
                const Monomial& m, const IntPoly& g, const MonomialOrder& order) {
  IntPoly out;
  out.reserve(h.size() - from + g.size());
  std::size_t i = from, j = 1;
  while (i < h.size() || j < g.size()) {
    int c;
    Monomial gm;
    if (j < g.size()) gm = g[j].monomial * m;
    if (i == h.size())
      c = -1;
    else if (j == g.size())
      c = 1;
    else
      c = order.compare(h[i].monomial, gm);
    if (c > 0) {
      out.push_back({h[i].monomial, a * h[i].coeff});
      ++i;
    } else if (c < 0) {
      out.push_back({gm, -b * g[j].coeff});
      ++j;
    } else {
      Integer s = a * h[i].coeff - b * g[j].coeff;
      if (s != 0) out.push_back({h[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

void make_primitive(IntPoly& p) {
  if (p.empty()) return;
  Integer g = content(p);
  if (sgn(p.front().coeff) < 0) g = -g;
  if (g != 1)
    for (auto& t : p) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
}

Polynomial to_monic_polynomial(const IntPoly& p, const Ambient& ambient) {
  std::vector<Polynomial::Term> terms;
  if (p.empty()) return Polynomial(ambient);
  terms.reserve(p.size());
  const Integer& lc = p.front().coeff;
  for (const auto& t : p) terms.push_back({t.monomial, make_rational(t.coeff, lc)});
  return Polynomial(ambient, std::move(terms));
}

IntPoly reduce(IntPoly h, const std::vector<IntPoly>& basis, const std::vector<bool>& active,
               const MonomialOrder& order, bool full, Rational* scale) {
  IntPoly r;
  std::size_t pos = 0;
  Rational factor = 1;
  unsigned steps = 0;
  while (pos < h.size()) {
    const IntTerm& lead = h[pos];
    const IntPoly* divisor = nullptr;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (!active.empty() && !active[k]) continue;
      if (basis[k].empty()) continue;
      if (basis[k].front().monomial.divides(lead.monomial)) {
        divisor = &basis[k];
        break;
      }
    }
    if (!divisor) {
      if (!full) break;
      r.push_back(std::move(h[pos]));
      ++pos;
      continue;
    }
    const Integer& lg = divisor->front().coeff;
    Integer d;
    mpz_gcd(d.get_mpz_t(), lg.get_mpz_t(), lead.coeff.get_mpz_t());
    Integer a = lg / d;
    Integer b = lead.coeff / d;
    Monomial m = lead.monomial / divisor->front().monomial;
    h = combine(h, pos + 1, a, b, m, *divisor, order);
    pos = 0;
    if (a != 1) {
      for (auto& t : r) t.coeff *= a;
      factor *= a;
    }
    if (++steps % 8 == 0) {
      Integer g = content(r);
      if (g != 1) {
        for (const auto& t : h) {
          mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
          if (g == 1) break;
        }
      }
      if (g > 1) {
        for (auto& t : r) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
        for (auto& t : h) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
        factor /= g;
      }
    }
  }
  if (!full) {
    // Top reduction only: whatever is left of h is the remainder.
    r.insert(r.end(), std::make_move_iterator(h.begin() + pos), std::make_move_iterator(h.end()));
  }
  if (!r.empty()) {
    Integer g = content(r);
    if (sgn(r.front().coeff) < 0) g = -g;
    if (g != 1) {
      for (auto& t : r) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
      factor /= g;
    }
  }
  if (scale) *scale = factor;
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------- Buchberger

namespace {

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t v = 0; v < a.size(); ++v)
    if (a[v] > 0 && b[v] > 0) return false;
  return true;
}

}  // namespace

GroebnerBasis compute_groebner_basis(const std::vector<Polynomial>& generators, const Ambient& ambient,
                                     const MonomialOrder& order) {
  using detail::IntPoly;
  std::vector<IntPoly> polys;
  std::vector<bool> active;
  std::vector<Pair> pairs;

  auto leads_of = [&](std::size_t k) -> const Monomial& { return polys[k].front().monomial; };

  // Gebauer-Moeller installation of a new element.
  auto update = [&](IntPoly h) {
    std::size_t hi = polys.size();
    polys.push_back(std::move(h));
    active.push_back(true);
    const Monomial& lh = leads_of(hi);

    std::vector<Pair> candidates;
    for (std::size_t k = 0; k < hi; ++k)
      if (active[k]) candidates.push_back({k, hi, lcm(leads_of(k), lh)});

    std::vector<Pair> kept;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      const Pair& p = candidates[a];
      if (coprime(leads_of(p.i), lh)) {
        kept.push_back(p);
        continue;
      }
      bool redundant = false;
      for (std::size_t b = 0; b < candidates.size() && !redundant; ++b) {
        if (b == a) continue;
        const Pair& q = candidates[b];
        if (q.lcm.divides(p.lcm) && !(q.lcm == p.lcm && b > a)) redundant = true;
      }
      if (!redundant) kept.push_back(p);
    }
    // Product criterion.
    std::vector<Pair> fresh;
    for (const Pair& p : kept)
      if (!coprime(leads_of(p.i), lh)) fresh.push_back(p);

    // Chain criterion on old pairs.
    std::vector<Pair> survivors;
    for (const Pair& p : pairs) {
      bool drop = lh.divides(p.lcm) && !(lcm(leads_of(p.i), lh) == p.lcm) &&
                  !(lcm(leads_of(p.j), lh) == p.lcm);
      if (!drop) survivors.push_back(p);
    }
    pairs = std::move(survivors);
    pairs.insert(pairs.end(), fresh.begin(), fresh.end());

    for (std::size_t k = 0; k < hi; ++k)
      if (active[k] && lh.divides(leads_of(k))) active[k] = false;
  };

  auto finish_unit = [&]() {
    return GroebnerBasis(order, ambient, {Polynomial::constant(ambient, 1)});
  };

  // Reduce the generators against each other as they are installed.
  std::vector<IntPoly> inputs;
  for (const auto& g : generators) {
    if (!(g.ambient() == ambient)) throw std::invalid_argument("generator over a different ambient");
    if (!g.is_zero()) inputs.push_back(detail::to_int_poly(g, order));
  }
  std::sort(inputs.begin(), inputs.end(), [&](const IntPoly& a, const IntPoly& b) {
    return order.compare(a.front().monomial, b.front().monomial) < 0;
  });
  for (auto& g : inputs) {
    IntPoly r = detail::reduce(std::move(g), polys, active, order, true);
    if (r.empty()) continue;
    if (r.front().monomial.is_one()) return finish_unit();
    update(std::move(r));
  }

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      int c = order.compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    });
    Pair p = *best;
    pairs.erase(best);

    const IntPoly& f = polys[p.i];
    const IntPoly& g = polys[p.j];
    Monomial mf = p.lcm / f.front().monomial;
    Monomial mg = p.lcm / g.front().monomial;
    // S = lc(g)*mf*f - lc(f)*mg*g, written through combine on mf*f.
    IntPoly shifted;
    shifted.reserve(f.size());
    for (const auto& t : f) shifted.push_back({t.monomial * mf, t.coeff});
    Integer d;
    mpz_gcd(d.get_mpz_t(), f.front().coeff.get_mpz_t(), g.front().coeff.get_mpz_t());
    IntPoly spoly;
    {
      Integer a = g.front().coeff / d;
      Integer b = f.front().coeff / d;
      // a*shifted[1..] - b*(mg*g)[1..]
      IntPoly out;
      std::size_t i = 1, j = 1;
      while (i < shifted.size() || j < g.size()) {
        int c;
        Monomial gm;
        if (j < g.size()) gm = g[j].monomial * mg;
        if (i == shifted.size())
          c = -1;
        else if (j == g.size())
          c = 1;
        else
          c = order.compare(shifted[i].monomial, gm);
        if (c > 0) {
          out.push_back({shifted[i].monomial, a * shifted[i].coeff});
          ++i;
        } else if (c < 0) {
          out.push_back({gm, -b * g[j].coeff});
          ++j;
        } else {
          Integer s = a * shifted[i].coeff - b * g[j].coeff;
          if (s != 0) out.push_back({shifted[i].monomial, std::move(s)});
          ++i;
          ++j;
        }
      }
      spoly = std::move(out);
    }
    detail::make_primitive(spoly);
    IntPoly r = detail::reduce(std::move(spoly), polys, active, order, true);
    if (r.empty()) continue;
    if (r.front().monomial.is_one()) return finish_unit();
    update(std::move(r));
  }

  // Active elements form a minimal basis; inter-reduce the tails.
  std::vector<IntPoly> minimal;
  for (std::size_t k = 0; k < polys.size(); ++k)
    if (active[k]) minimal.push_back(polys[k]);
  std::sort(minimal.begin(), minimal.end(), [&](const IntPoly& a, const IntPoly& b) {
    return order.compare(a.front().monomial, b.front().monomial) < 0;
  });
  std::vector<Polynomial> reduced;
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<bool> others(minimal.size(), true);
    others[k] = false;
    Rational scale = 1;
    IntPoly tail(minimal[k].begin() + 1, minimal[k].end());
    IntPoly rt = tail.empty() ? tail : detail::reduce(std::move(tail), minimal, others, order, true, &scale);
    // rt = scale * NF(tail); element = lead + NF(tail).
    std::vector<Polynomial::Term> terms;
    Rational lc(minimal[k].front().coeff);
    terms.push_back({minimal[k].front().monomial, 1});
    for (const auto& t : rt) terms.push_back({t.monomial, Rational(t.coeff) / scale / lc});
    reduced.push_back(Polynomial(ambient, std::move(terms)));
  }
  return GroebnerBasis(order, ambient, std::move(reduced));
}

// ---------------------------------------------------------------- GroebnerBasis

GroebnerBasis::GroebnerBasis(MonomialOrder order, Ambient ambient, std::vector<Polynomial> elements)
    : order_(std::move(order)), ambient_(std::move(ambient)), elements_(std::move(elements)) {
  for (const auto& e : elements_) {
    auto ip = detail::to_int_poly(e, order_);
    leads_.push_back(ip.front().monomial);
  }
}

bool GroebnerBasis::is_unit() const {
  return elements_.size() == 1 && elements_.front().is_constant() && !elements_.front().is_zero();
}

Polynomial GroebnerBasis::normal_form(const Polynomial& f) const {
  if (f.is_zero()) return f;
  std::vector<detail::IntPoly> basis;
  for (const auto& e : elements_) basis.push_back(detail::to_int_poly(e, order_));
  Rational input_scale = 1;
  // to_int_poly scales f by an unknown positive rational; recover it.
  detail::IntPoly fi = detail::to_int_poly(f, order_);
  input_scale = Rational(fi.front().coeff) / f.coefficient(fi.front().monomial);
  Rational scale;
  detail::IntPoly r = detail::reduce(std::move(fi), basis, {}, order_, true, &scale);
  std::vector<Polynomial::Term> terms;
  for (const auto& t : r) terms.push_back({t.monomial, Rational(t.coeff) / scale / input_scale});
  return Polynomial(ambient_, std::move(terms));
}

bool GroebnerBasis::reduces_to_zero(const Polynomial& f) const {
  if (f.is_zero()) return true;
  if (is_unit()) return true;
  std::vector<detail::IntPoly> basis;
  basis.reserve(elements_.size());
  for (const auto& e : elements_) basis.push_back(detail::to_int_poly(e, order_));
  return detail::reduce(detail::to_int_poly(f, order_), basis, {}, order_, true).empty();
}

std::optional<std::size_t> GroebnerBasis::count_standard_monomials() const {
  const std::size_t n = ambient_.size();
  if (is_unit()) return 0;
  if (n == 0) return 1;
  std::vector<unsigned> pure(n, 0);
  for (const auto& m : leads_) {
    std::size_t support = 0, var = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (m[v] > 0) {
        ++support;
        var = v;
      }
    if (support == 1 && (pure[var] == 0 || m[var] < pure[var])) pure[var] = m[var];
  }
  for (std::size_t v = 0; v < n; ++v)
    if (pure[v] == 0) return std::nullopt;

  // Walk the first n-1 exponents; the last one ranges below the smallest
  // compatible leading exponent.
  std::size_t total = 0;
  std::vector<unsigned> e(n, 0);
  auto last_bound = [&]() {
    unsigned best = pure[n - 1];
    for (const auto& m : leads_) {
      bool ok = true;
      for (std::size_t v = 0; v + 1 < n && ok; ++v) ok = m[v] <= e[v];
      if (ok) best = std::min(best, m[n - 1]);
    }
    return best;
  };
  auto rec = [&](auto&& self, std::size_t v) -> void {
    if (v + 1 == n) {
      total += last_bound();
      return;
    }
    for (e[v] = 0; e[v] < pure[v]; ++e[v]) {
      // Once (e_0..e_v, 0, ...) is a leading multiple, so is every extension.
      bool divisible = false;
      for (const auto& m : leads_) {
        bool ok = true;
        for (std::size_t w = 0; w < n && ok; ++w) ok = m[w] <= (w <= v ? e[w] : 0u);
        if (ok) {
          divisible = true;
          break;
        }
      }
      if (divisible) break;
      self(self, v + 1);
    }
    e[v] = 0;
  };
  rec(rec, 0);
  return total;
}

std::vector<Monomial> GroebnerBasis::standard_monomials(std::size_t limit) const {
  std::vector<Monomial> out;
  if (is_unit()) return out;
  const std::size_t n = ambient_.size();
  // Breadth-first by degree so truncated lists keep the small monomials.
  std::vector<Monomial> frontier{Monomial(n)};
  auto standard = [&](const Monomial& m) {
    return std::none_of(leads_.begin(), leads_.end(), [&](const Monomial& l) { return l.divides(m); });
  };
  if (!standard(frontier[0])) return out;
  while (!frontier.empty() && out.size() < limit) {
    std::vector<Monomial> next;
    for (const auto& m : frontier) {
      if (out.size() >= limit) break;
      out.push_back(m);
      for (std::size_t v = 0; v < n; ++v) {
        // Generate each monomial once: only raise variables at or after the
        // last nonzero one.
        bool later_nonzero = false;
        for (std::size_t w = v + 1; w < n; ++w) later_nonzero = later_nonzero || m[w] > 0;
        if (later_nonzero) continue;
        Monomial up = m;
        up.set(v, m[v] + 1);
        if (standard(up)) next.push_back(up);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace lojex
