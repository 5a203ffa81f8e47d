#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lojex/polynomial.hpp"

namespace lojex {

enum class OrderKind { grevlex, lex };

// Total, multiplicative well-order on monomials. `priority` lists variable
// indices from most to least significant.
class MonomialOrder {
 public:
  MonomialOrder(OrderKind kind, std::vector<std::size_t> priority);

  static MonomialOrder grevlex(std::size_t nvars);
  static MonomialOrder lex(std::size_t nvars);

  OrderKind kind() const { return kind_; }
  const std::vector<std::size_t>& priority() const { return priority_; }
  int compare(const Monomial& a, const Monomial& b) const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  OrderKind kind_;
  std::vector<std::size_t> priority_;
};

// Order used by Ideal::basis() and everything built on it (colength,
// membership). Results never depend on it; running time may.
void set_default_order(OrderKind kind);
OrderKind default_order();

// Reduced Groebner basis: monic elements sorted by ascending leading monomial.
class GroebnerBasis {
 public:
  GroebnerBasis(MonomialOrder order, Ambient ambient, std::vector<Polynomial> elements);

  const MonomialOrder& order() const { return order_; }
  const Ambient& ambient() const { return ambient_; }
  const std::vector<Polynomial>& elements() const { return elements_; }
  const std::vector<Monomial>& leading_monomials() const { return leads_; }

  bool is_unit() const;
  Polynomial normal_form(const Polynomial& f) const;
  bool reduces_to_zero(const Polynomial& f) const;
  // Number of monomials outside the leading-term ideal; nullopt if infinite.
  std::optional<std::size_t> count_standard_monomials() const;
  std::vector<Monomial> standard_monomials(std::size_t limit) const;

 private:
  MonomialOrder order_;
  Ambient ambient_;
  std::vector<Polynomial> elements_;
  std::vector<Monomial> leads_;
};

// Buchberger's algorithm with the normal selection strategy and the
// Gebauer-Moeller form of both Buchberger criteria.
GroebnerBasis compute_groebner_basis(const std::vector<Polynomial>& generators,
                                     const Ambient& ambient, const MonomialOrder& order);

class Ideal {
 public:
  Ideal(Ambient ambient, std::vector<Polynomial> generators);

  static Ideal unit(const Ambient& ambient);
  // Ideal generated by all variables (the maximal ideal at the origin).
  static Ideal maximal(const Ambient& ambient);
  static Ideal parse(const Ambient& ambient, const std::vector<std::string>& generators);

  const Ambient& ambient() const { return ambient_; }
  const std::vector<Polynomial>& generators() const { return generators_; }

  // Cached; concurrent callers agree on a single computed basis per order.
  const GroebnerBasis& basis(const MonomialOrder& order) const;
  const GroebnerBasis& basis() const;

  bool is_unit() const { return basis().is_unit(); }
  bool contains(const Polynomial& f) const;
  bool contains(const Ideal& other) const;
  bool is_monomial() const;
  // Smallest lowest-degree among generators: I lies in m^order.
  int order_at_origin() const;

  std::string to_string() const;

 private:
  struct Cache;

  Ambient ambient_;
  std::vector<Polynomial> generators_;
  std::shared_ptr<Cache> cache_;
};

// Same ideal (mutual containment).
bool same_ideal(const Ideal& a, const Ideal& b);

std::vector<Polynomial> groebner_basis(const Ideal& ideal, const MonomialOrder& order);
bool member(const Polynomial& f, const Ideal& ideal);

Ideal sum(const Ideal& a, const Ideal& b);
Ideal product(const Ideal& a, const Ideal& b);
// All m-fold products of generators, deduplicated; m = 0 gives the unit ideal.
Ideal power(const Ideal& ideal, unsigned m);

// f^k in I for some k (Rabinowitsch trick with one auxiliary variable).
bool in_radical(const Polynomial& f, const Ideal& ideal);

// Dimension of Q[x]/I; nullopt when infinite.
std::optional<std::size_t> colength(const Ideal& ideal);
std::vector<Monomial> standard_monomials(const Ideal& ideal, std::size_t limit = 100000);

// Dimension of the local ring at the origin modulo I, computed from
// colength(I + m^N) until two consecutive values agree. nullopt when no
// stabilization happens up to max_power.
std::optional<std::size_t> local_colength(const Ideal& ideal, unsigned max_power = 64);

// Value of an integer order function: finite, infinite, or capped.
struct OrderValue {
  enum class Kind { finite, infinite, at_least };
  Kind kind = Kind::finite;
  unsigned value = 0;

  static OrderValue finite(unsigned v) { return {Kind::finite, v}; }
  static OrderValue infinite() { return {Kind::infinite, 0}; }
  static OrderValue at_least(unsigned v) { return {Kind::at_least, v}; }

  bool is_finite() const { return kind == Kind::finite; }
  friend bool operator==(const OrderValue&, const OrderValue&) = default;
  std::string to_string() const;
};

// Largest m <= cap with f in I^m. Throws std::invalid_argument for the unit ideal.
OrderValue nu(const Polynomial& f, const Ideal& ideal, unsigned cap);
OrderValue nu_ideal(const Ideal& j, const Ideal& ideal, unsigned cap);

struct NubarTrace {
  Rational bound;                 // best lower bound found
  std::vector<Rational> doubling;  // nu(f^(2^k))/2^k for k = 0..budget
};

// Certified lower bound for the reduced order: max of nu(f^n)/n over
// 1 <= n <= 2^budget. Throws for budget = 0, f = 0 or the unit ideal.
Rational nubar_lower(const Polynomial& f, const Ideal& ideal, unsigned budget);
NubarTrace nubar_lower_trace(const Polynomial& f, const Ideal& ideal, unsigned budget);

struct MultiplicityTrace {
  std::size_t multiplicity = 0;
  std::vector<std::size_t> colengths;  // colength(I^m), m = 1, 2, ...
};

// e(I) from the Hilbert-Samuel function m -> colength(I^m): the n-th finite
// difference must stay constant over n+1 consecutive windows.
std::size_t samuel_multiplicity(const Ideal& ideal, unsigned max_power = 40);
MultiplicityTrace samuel_multiplicity_trace(const Ideal& ideal, unsigned max_power = 40);

}  // namespace lojex
