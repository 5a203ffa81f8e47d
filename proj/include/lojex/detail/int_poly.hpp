#pragma once

// Fraction-free sparse polynomials used inside the Groebner engine. Terms are
// kept in descending order for a fixed MonomialOrder.

#include <vector>

#include "lojex/polynomial.hpp"

namespace lojex {
class MonomialOrder;
}

namespace lojex::detail {

struct IntTerm {
  Monomial monomial;
  Integer coeff;
};

using IntPoly = std::vector<IntTerm>;

// Clears denominators, divides out the content and sorts for `order`.
IntPoly to_int_poly(const Polynomial& p, const MonomialOrder& order);
// Primitive part with positive leading coefficient.
void make_primitive(IntPoly& p);
Polynomial to_monic_polynomial(const IntPoly& p, const Ambient& ambient);

// Reduces f modulo `basis` (whose leading monomials are `leads`). Returns a
// primitive remainder; `scale`, when given, receives the rational factor with
// remainder = scale * (true normal form). Only the indices flagged in
// `active` (all when empty) are used as reducers.
IntPoly reduce(IntPoly f, const std::vector<IntPoly>& basis, const std::vector<bool>& active,
               const MonomialOrder& order, bool full, Rational* scale = nullptr);

}  // namespace lojex::detail
