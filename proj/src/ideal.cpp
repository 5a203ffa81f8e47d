#include "lojex/ideal.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <unordered_set>

namespace lojex {

struct Ideal::Cache {
  std::mutex mutex;
  std::vector<std::pair<MonomialOrder, std::shared_ptr<const GroebnerBasis>>> entries;
};

Ideal::Ideal(Ambient ambient, std::vector<Polynomial> generators)
    : ambient_(std::move(ambient)), generators_(std::move(generators)), cache_(std::make_shared<Cache>()) {
  if (generators_.empty()) throw std::invalid_argument("an ideal needs at least one generator");
  for (const auto& g : generators_)
    if (!(g.ambient() == ambient_)) throw std::invalid_argument("generator over a different ambient");
}

Ideal Ideal::unit(const Ambient& ambient) { return Ideal(ambient, {Polynomial::constant(ambient, 1)}); }

Ideal Ideal::maximal(const Ambient& ambient) {
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < ambient.size(); ++i) gens.push_back(Polynomial::variable(ambient, i));
  if (gens.empty()) gens.push_back(Polynomial(ambient));
  return Ideal(ambient, std::move(gens));
}

Ideal Ideal::parse(const Ambient& ambient, const std::vector<std::string>& generators) {
  std::vector<Polynomial> gens;
  for (const auto& g : generators) gens.push_back(parse_poly(g, ambient));
  return Ideal(ambient, std::move(gens));
}

const GroebnerBasis& Ideal::basis(const MonomialOrder& order) const {
  // The lock is held through the computation so exactly one caller computes.
  std::lock_guard lock(cache_->mutex);
  for (const auto& [o, b] : cache_->entries)
    if (o == order) return *b;
  auto b = std::make_shared<const GroebnerBasis>(compute_groebner_basis(generators_, ambient_, order));
  cache_->entries.emplace_back(order, b);
  return *b;
}

namespace {
std::atomic<OrderKind> g_default_order{OrderKind::grevlex};
}  // namespace

void set_default_order(OrderKind kind) { g_default_order = kind; }
OrderKind default_order() { return g_default_order; }

const GroebnerBasis& Ideal::basis() const {
  return basis(default_order() == OrderKind::lex ? MonomialOrder::lex(ambient_.size())
                                                 : MonomialOrder::grevlex(ambient_.size()));
}

bool Ideal::contains(const Polynomial& f) const {
  if (!(f.ambient() == ambient_)) throw std::invalid_argument("membership test over a different ambient");
  if (f.is_zero()) return true;
  if (is_monomial() && f.is_monomial()) {
    for (const auto& g : generators_)
      if (!g.is_zero() && g.terms().front().monomial.divides(f.terms().front().monomial)) return true;
    return false;
  }
  return basis().reduces_to_zero(f);
}

bool Ideal::contains(const Ideal& other) const {
  return std::all_of(other.generators().begin(), other.generators().end(),
                     [&](const Polynomial& g) { return contains(g); });
}

bool Ideal::is_monomial() const {
  return std::all_of(generators_.begin(), generators_.end(),
                     [](const Polynomial& g) { return g.is_zero() || g.is_monomial(); });
}

int Ideal::order_at_origin() const {
  int best = -1;
  for (const auto& g : generators_) {
    if (g.is_zero()) continue;
    int d = g.lowest_degree();
    if (best < 0 || d < best) best = d;
  }
  return best;
}

std::string Ideal::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) out += ", ";
    out += generators_[i].to_string();
  }
  return out + ">";
}

bool same_ideal(const Ideal& a, const Ideal& b) { return a.contains(b) && b.contains(a); }

std::vector<Polynomial> groebner_basis(const Ideal& ideal, const MonomialOrder& order) {
  return ideal.basis(order).elements();
}

bool member(const Polynomial& f, const Ideal& ideal) { return ideal.contains(f); }

Ideal sum(const Ideal& a, const Ideal& b) {
  std::vector<Polynomial> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Ideal(a.ambient(), std::move(gens));
}

namespace {

// Drops zeros and exact duplicates, keeping first occurrences.
std::vector<Polynomial> dedup(std::vector<Polynomial> gens, const Ambient& ambient) {
  std::vector<Polynomial> out;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (std::none_of(out.begin(), out.end(), [&](const Polynomial& h) { return h == g; }))
      out.push_back(std::move(g));
  }
  if (out.empty()) out.push_back(Polynomial(ambient));
  return out;
}

// For monomial generator lists, keep only the minimal ones.
std::vector<Polynomial> minimal_monomials(std::vector<Polynomial> gens) {
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Monomial& m = gens[i].terms().front().monomial;
    bool redundant = false;
    for (std::size_t j = 0; j < gens.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& o = gens[j].terms().front().monomial;
      if (o.divides(m) && (!(o == m) || j < i)) redundant = true;
    }
    if (!redundant) out.push_back(Polynomial::monomial(gens[i].ambient(), m));
  }
  return out;
}

}  // namespace

Ideal product(const Ideal& a, const Ideal& b) {
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators())
    for (const auto& g : b.generators()) gens.push_back(f * g);
  return Ideal(a.ambient(), dedup(std::move(gens), a.ambient()));
}

Ideal power(const Ideal& ideal, unsigned m) {
  if (m == 0) return Ideal::unit(ideal.ambient());
  if (m == 1) return ideal;
  const auto& gens = ideal.generators();
  if (ideal.is_monomial() && std::none_of(gens.begin(), gens.end(), [](const Polynomial& g) { return g.is_zero(); })) {
    // Multiply one factor at a time, keeping only minimal monomials.
    std::vector<Polynomial> acc = minimal_monomials(gens);
    const std::vector<Polynomial> base = acc;
    for (unsigned k = 1; k < m; ++k) {
      std::vector<Polynomial> next;
      for (const auto& a : acc)
        for (const auto& b : base) next.push_back(a * b);
      acc = minimal_monomials(dedup(std::move(next), ideal.ambient()));
    }
    return Ideal(ideal.ambient(), std::move(acc));
  }
  // Enumerate multisets of generator indices of size m.
  std::vector<Polynomial> out;
  std::vector<std::size_t> idx(m, 0);
  std::vector<Polynomial> partial(m + 1, Polynomial::constant(ideal.ambient(), 1));
  auto rec = [&](auto&& self, std::size_t depth, std::size_t start) -> void {
    if (depth == m) {
      out.push_back(partial[m]);
      return;
    }
    for (std::size_t k = start; k < gens.size(); ++k) {
      partial[depth + 1] = partial[depth] * gens[k];
      self(self, depth + 1, k);
    }
  };
  rec(rec, 0, 0);
  out = dedup(std::move(out), ideal.ambient());
  if (ideal.is_monomial() && !out.front().is_zero()) out = minimal_monomials(std::move(out));
  return Ideal(ideal.ambient(), std::move(out));
}

bool in_radical(const Polynomial& f, const Ideal& ideal) {
  if (f.is_zero() || ideal.contains(f)) return true;
  const Ambient& amb = ideal.ambient();
  if (amb.size() + 1 > kMaxVariables) throw std::invalid_argument("radical membership needs a spare variable");
  std::vector<std::string> names = amb.names();
  std::string t = "t";
  while (amb.index_of(t)) t += "_";
  names.push_back(t);
  Ambient big(names);
  auto lift = [&](const Polynomial& p) {
    std::vector<Polynomial::Term> terms;
    for (const auto& term : p.terms()) {
      Monomial m(big.size());
      for (std::size_t i = 0; i < amb.size(); ++i) m.set(i, term.monomial[i]);
      terms.push_back({m, term.coeff});
    }
    return Polynomial(big, std::move(terms));
  };
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(lift(g));
  gens.push_back(Polynomial::constant(big, 1) - Polynomial::variable(big, amb.size()) * lift(f));
  return Ideal(big, std::move(gens)).is_unit();
}

std::optional<std::size_t> colength(const Ideal& ideal) {
  if (ideal.is_monomial()) {
    // Monomial generators already form a Groebner basis.
    std::vector<Polynomial> gens;
    for (const auto& g : ideal.generators())
      if (!g.is_zero()) gens.push_back(Polynomial::monomial(ideal.ambient(), g.terms().front().monomial));
    if (gens.empty()) return std::nullopt;
    GroebnerBasis gb(MonomialOrder::grevlex(ideal.ambient().size()), ideal.ambient(), minimal_monomials(gens));
    return gb.count_standard_monomials();
  }
  return ideal.basis().count_standard_monomials();
}

std::vector<Monomial> standard_monomials(const Ideal& ideal, std::size_t limit) {
  return ideal.basis().standard_monomials(limit);
}

std::optional<std::size_t> local_colength(const Ideal& ideal, unsigned max_power) {
  const Ideal m = Ideal::maximal(ideal.ambient());
  std::optional<std::size_t> previous;
  for (unsigned n = 1; n <= max_power; ++n) {
    auto c = colength(sum(ideal, power(m, n)));
    if (previous && c == previous) return c;
    previous = c;
  }
  return std::nullopt;
}

std::string OrderValue::to_string() const {
  switch (kind) {
    case Kind::finite:
      return std::to_string(value);
    case Kind::infinite:
      return "infinite";
    case Kind::at_least:
      return ">=" + std::to_string(value);
  }
  return "?";
}

OrderValue nu(const Polynomial& f, const Ideal& ideal, unsigned cap) {
  if (ideal.is_unit()) throw std::invalid_argument("nu is undefined for the unit ideal");
  if (f.is_zero()) return OrderValue::infinite();
  const int ord = ideal.order_at_origin();
  const int fdeg = f.lowest_degree();
  // I^m lies in the (m*ord)-th power of the maximal ideal.
  unsigned hi = cap;
  if (ord > 0) hi = std::min<unsigned>(cap, static_cast<unsigned>(fdeg / ord));
  unsigned best = 0;
  if (ideal.is_monomial()) {
    // f in I^m is monotone in m; powers of monomial ideals are cheap.
    unsigned lo = 0;
    while (lo < hi) {
      unsigned mid = lo + (hi - lo + 1) / 2;
      if (power(ideal, mid).contains(f)) lo = mid;
      else hi = mid - 1;
    }
    best = lo;
  } else {
    for (unsigned m = 1; m <= hi; ++m) {
      if (!power(ideal, m).contains(f)) break;
      best = m;
    }
  }
  return best == cap ? OrderValue::at_least(cap) : OrderValue::finite(best);
}

OrderValue nu_ideal(const Ideal& j, const Ideal& ideal, unsigned cap) {
  if (ideal.is_unit()) throw std::invalid_argument("nu is undefined for the unit ideal");
  OrderValue best = OrderValue::infinite();
  for (const auto& g : j.generators()) {
    OrderValue v = nu(g, ideal, cap);
    if (v.kind == OrderValue::Kind::infinite) continue;
    if (best.kind == OrderValue::Kind::infinite || v.value < best.value ||
        (v.value == best.value && v.kind == OrderValue::Kind::finite))
      best = v;
  }
  return best;
}

NubarTrace nubar_lower_trace(const Polynomial& f, const Ideal& ideal, unsigned budget) {
  if (budget == 0) throw std::invalid_argument("nubar budget must be positive");
  if (f.is_zero()) throw std::invalid_argument("nubar of the zero polynomial is infinite");
  if (ideal.is_unit()) throw std::invalid_argument("nu is undefined for the unit ideal");
  NubarTrace trace;
  trace.bound = 0;
  const unsigned top = 1u << budget;
  Polynomial fn = Polynomial::constant(f.ambient(), 1);
  for (unsigned n = 1; n <= top; ++n) {
    fn = fn * f;
    // nu(f^n) <= lowest degree / order, so this cap is never hit when ord > 0.
    const int ord = ideal.order_at_origin();
    unsigned cap = ord > 0 ? static_cast<unsigned>(fn.lowest_degree() / ord) + 1 : 64u * n;
    OrderValue v = nu(fn, ideal, cap);
    Rational u = make_rational(static_cast<long>(v.value), static_cast<long>(n));
    if (u > trace.bound) trace.bound = u;
    if ((n & (n - 1)) == 0) trace.doubling.push_back(u);
  }
  return trace;
}

Rational nubar_lower(const Polynomial& f, const Ideal& ideal, unsigned budget) {
  return nubar_lower_trace(f, ideal, budget).bound;
}

MultiplicityTrace samuel_multiplicity_trace(const Ideal& ideal, unsigned max_power) {
  const std::size_t n = ideal.ambient().size();
  MultiplicityTrace trace;
  if (!colength(ideal)) throw std::invalid_argument("samuel multiplicity needs finite colength");
  std::vector<long long> diffs;  // n-th differences, indexed by starting m
  for (unsigned m = 1; m <= max_power; ++m) {
    auto c = colength(power(ideal, m));
    trace.colengths.push_back(*c);
    if (trace.colengths.size() < n + 1) continue;
    // n-th forward difference over the last n+1 values.
    std::vector<long long> window(trace.colengths.end() - static_cast<long>(n + 1), trace.colengths.end());
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i + 1 < window.size() - k; ++i) window[i] = window[i + 1] - window[i];
    diffs.push_back(window[0]);
    if (diffs.size() >= n + 1) {
      bool stable = std::all_of(diffs.end() - static_cast<long>(n + 1), diffs.end(),
                                [&](long long d) { return d == diffs.back(); });
      if (stable) {
        if (diffs.back() <= 0) throw std::runtime_error("non-positive Hilbert-Samuel leading term");
        trace.multiplicity = static_cast<std::size_t>(diffs.back());
        return trace;
      }
    }
  }
  throw std::runtime_error("Hilbert-Samuel differences did not stabilize");
}

std::size_t samuel_multiplicity(const Ideal& ideal, unsigned max_power) {
  return samuel_multiplicity_trace(ideal, max_power).multiplicity;
}

}  // namespace lojex
