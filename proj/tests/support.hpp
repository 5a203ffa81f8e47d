#pragma once

#include <random>
#include <string>
#include <vector>

#include "lojex/ideal.hpp"
#include "lojex/polynomial.hpp"

namespace lojex::testing {

inline Ambient xyz() { return Ambient({"x", "y", "z"}); }
inline Ambient xy() { return Ambient({"x", "y"}); }

inline Polynomial P(const std::string& text, const Ambient& amb) { return parse_poly(text, amb); }

// Small random polynomial: up to `terms` terms, degree <= max_deg per
// variable, integer coefficients in [-3, 3].
inline Polynomial random_poly(std::mt19937& rng, const Ambient& amb, int terms = 4, unsigned max_deg = 3) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  std::vector<Polynomial::Term> out;
  for (int t = 0; t < terms; ++t) {
    Monomial m(amb.size());
    for (std::size_t v = 0; v < amb.size(); ++v) m.set(v, deg(rng));
    out.push_back({m, coeff(rng)});
  }
  return Polynomial(amb, std::move(out));
}

inline Polynomial random_monomial(std::mt19937& rng, const Ambient& amb, unsigned max_deg) {
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  Monomial m(amb.size());
  for (std::size_t v = 0; v < amb.size(); ++v) m.set(v, deg(rng));
  return Polynomial::monomial(amb, m);
}

// Random finite-colength monomial ideal in two variables: pure powers x^a,
// y^b plus up to two mixed monomials, all exponents <= max_exp.
inline Ideal random_monomial_ideal_2d(std::mt19937& rng, unsigned max_exp = 5) {
  Ambient amb = xy();
  std::uniform_int_distribution<unsigned> e(1, max_exp);
  std::uniform_int_distribution<int> extra(0, 2);
  std::vector<Polynomial> gens;
  gens.push_back(Polynomial::monomial(amb, Monomial{e(rng), 0}));
  gens.push_back(Polynomial::monomial(amb, Monomial{0, e(rng)}));
  int k = extra(rng);
  for (int i = 0; i < k; ++i) {
    unsigned a = e(rng), b = e(rng);
    gens.push_back(Polynomial::monomial(amb, Monomial{a, b}));
  }
  return Ideal(amb, std::move(gens));
}

}  // namespace lojex::testing
