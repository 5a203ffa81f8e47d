#include "lojex/loj.hpp"

#include <stdexcept>

namespace lojex {

namespace {

void require_verified(const ResolutionTree& tree) {
  if (!tree.verified()) throw std::invalid_argument("resolution tree is not verified");
}

Ideal principal(const Polynomial& f) { return Ideal(f.ambient(), {f}); }

}  // namespace

LojResult loj_exponent(const ResolutionTree& tree) {
  require_verified(tree);
  if (!same_ideal(tree.J, Ideal::maximal(tree.J.ambient())))
    throw std::invalid_argument("loj_exponent needs J = maximal ideal");
  std::optional<LojResult> best;
  for (const auto& [d, r] : tree.divisors) {
    if (r.b == 0) throw std::invalid_argument("divisor E" + std::to_string(d) + " has b = 0");
    Rational ratio = make_rational(r.a, r.b);
    if (!best || ratio > best->value) best = LojResult{ratio, d};
  }
  if (!best) throw std::invalid_argument("resolution tree has no divisors");
  return *best;
}

LojResult mu(const ResolutionTree& tree) {
  require_verified(tree);
  std::optional<LojResult> best;
  for (const auto& [d, r] : tree.divisors) {
    if (r.a == 0) continue;
    Rational ratio = make_rational(r.b, r.a);
    if (!best || ratio < best->value) best = LojResult{ratio, d};
  }
  if (!best) throw std::invalid_argument("mu undefined: every divisor has a = 0");
  return *best;
}

LojResult theta(const ResolutionTree& tree) {
  LojResult m = mu(tree);
  if (m.value == 0) throw std::invalid_argument("theta undefined: mu = 0");
  return {1 / m.value, m.witness};
}

std::optional<unsigned> divisor_order(const Polynomial& f, DivisorId divisor, const ResolutionTree& tree) {
  for (const auto& [id, leaf] : tree.leaves)
    if (leaf.divisors.count(divisor)) return ord_along(leaf, divisor, total_transform(leaf, principal(f)));
  throw std::invalid_argument("divisor E" + std::to_string(divisor) + " is not visible in any leaf");
}

std::optional<Rational> divisorial_order(const Polynomial& f, const ResolutionTree& tree) {
  if (f.is_zero()) return std::nullopt;
  std::optional<Rational> best;
  bool any = false;
  for (const auto& [d, r] : tree.divisors) {
    if (r.a == 0) continue;
    any = true;
    Rational ratio = make_rational(*divisor_order(f, d, tree), r.a);
    if (!best || ratio < *best) best = ratio;
  }
  if (!any) throw std::invalid_argument("order undefined: every divisor has a = 0");
  return best;
}

bool closure_member(const Polynomial& f, const Ideal& I, unsigned p, unsigned q, const ResolutionTree& tree) {
  require_verified(tree);
  if (p == 0 || q == 0) throw std::invalid_argument("closure_member needs p, q >= 1");
  if (!same_ideal(I, tree.I)) throw std::invalid_argument("tree does not resolve the given ideal");
  if (f.is_zero()) return true;
  // Chartwise: every visible divisor in every leaf. The orders must agree
  // across leaves, which also guards the visibility bookkeeping.
  std::map<DivisorId, unsigned> seen;
  bool member = true;
  for (const auto& [id, leaf] : tree.leaves) {
    Ideal pulled = total_transform(leaf, principal(f));
    for (const auto& [d, v] : leaf.divisors) {
      unsigned ord = *ord_along(leaf, d, pulled);
      auto [it, fresh] = seen.emplace(d, ord);
      if (!fresh && it->second != ord)
        throw std::logic_error("order of f along E" + std::to_string(d) + " differs between charts");
      if (static_cast<unsigned long>(q) * ord < static_cast<unsigned long>(p) * tree.divisors.at(d).a) member = false;
    }
  }
  return member;
}

ResolutionTree scaled_tree(const ResolutionTree& tree, unsigned p, unsigned q) {
  if (p == 0 || q == 0) throw std::invalid_argument("scaled_tree needs p, q >= 1");
  ResolutionTree out = tree;
  out.I = power(tree.I, p);
  out.J = power(tree.J, q);
  for (auto& [d, r] : out.divisors) {
    r.a *= p;
    r.b *= q;
  }
  out.report.reset();
  certify(out);
  return out;
}

unsigned determinacy_degree(const Rational& L) {
  if (L < 0) throw std::invalid_argument("determinacy_degree needs L >= 0");
  return static_cast<unsigned>(floor(L).get_ui()) + 1;
}

}  // namespace lojex
