#pragma once

#include <optional>

#include "lojex/resolve.hpp"

namespace lojex {

struct LojResult {
  Rational value;
  DivisorId witness = 0;  // divisor attaining the extremum
};

// max a/b over the divisor table. Needs a verified tree with J = m.
LojResult loj_exponent(const ResolutionTree& tree);

// min b/a over divisors with a > 0. Throws when every a is 0.
LojResult mu(const ResolutionTree& tree);

// 1/mu.
LojResult theta(const ResolutionTree& tree);

// Order of f along a divisor, read in any leaf where it is visible.
// nullopt for f = 0.
std::optional<unsigned> divisor_order(const Polynomial& f, DivisorId divisor, const ResolutionTree& tree);

// min over divisors with a > 0 of ord_E(f)/a_E: the integral-closure order
// of f with respect to I. nullopt for f = 0 (infinite order).
std::optional<Rational> divisorial_order(const Polynomial& f, const ResolutionTree& tree);

// f^q in the integral closure of I^p.
bool closure_member(const Polynomial& f, const Ideal& I, unsigned p, unsigned q, const ResolutionTree& tree);

// The same tree read as a resolution of (I^p, J^q): multiplicities scale by
// p and q. The result is re-verified.
ResolutionTree scaled_tree(const ResolutionTree& tree, unsigned p, unsigned q);

unsigned determinacy_degree(const Rational& L);

}  // namespace lojex
