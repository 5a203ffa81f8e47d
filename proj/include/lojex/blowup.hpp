#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lojex/ideal.hpp"
#include "lojex/polynomial.hpp"

namespace lojex {

// Exceptional divisor E_k, born at blow-up step k (1-based).
using DivisorId = unsigned;

// One affine patch of an iterated blow-up. Chart coordinates reuse the base
// variable names; the chart id tells patches apart.
struct Chart {
  std::string id;
  Ambient ambient;
  // Base variable -> polynomial in chart coordinates.
  Substitution pullback;
  // Divisors meeting this chart and the chart variable cutting each one out.
  // Divisors missing here are disjoint from the chart.
  std::map<DivisorId, std::size_t> divisors;
  std::string parent;  // empty for the root chart
  // For every sibling of this chart or of an ancestor: the sibling's id and a
  // function on this chart whose non-vanishing locus maps into the sibling.
  std::vector<std::pair<std::string, Polynomial>> overlaps;

  std::string describe_pullback() const;
};

Chart root_chart(const Ambient& base);

// Blow up the coordinate subspace {v = 0 : v in center}. Returns one chart
// per center variable, in center order. Throws std::invalid_argument for a
// center of size < 2 or repeated variables.
std::vector<Chart> blow_up(const Chart& chart, const std::vector<std::size_t>& center, DivisorId new_divisor);

// Triangular polynomial automorphism of the chart coordinates (x_i -> c_i x_i
// + h_i, c_i a nonzero constant, the dependency graph of the h_i acyclic) or
// a permutation of the variables.
class CoordinateChange {
 public:
  explicit CoordinateChange(Substitution forward);
  // Variables not mentioned map to themselves.
  static CoordinateChange from_map(const Ambient& ambient,
                                   const std::vector<std::pair<std::string, Polynomial>>& images);

  const Substitution& forward() const { return forward_; }
  const Substitution& inverse() const { return inverse_; }
  bool is_identity() const;

 private:
  Substitution forward_;
  Substitution inverse_;
};

// New chart whose pullback is the old one followed by the change. Throws
// std::invalid_argument when a divisor stops being a coordinate hyperplane.
Chart apply_coordinate_change(const Chart& chart, const CoordinateChange& change);

// Ideal generated by the pullbacks of the generators.
Ideal total_transform(const Chart& chart, const Ideal& base_ideal);

// Largest k with u^k dividing every generator (u the local equation of E);
// 0 for the unit ideal, nullopt for the zero ideal. Throws when E is not
// visible in the chart.
std::optional<unsigned> ord_along(const Chart& chart, DivisorId divisor, const Ideal& ideal);

struct MonomialityResult {
  bool monomial = false;
  std::map<DivisorId, unsigned> multiplicities;
  // Ideal obtained by dividing every generator by the divisor monomial.
  std::optional<Ideal> cofactor;
};

// Whether `ideal` (over the chart coordinates) is a monomial in the visible
// divisors near the fiber over the origin: the cofactor ideal has no zero on
// the locus where the pullback of the maximal ideal vanishes.
MonomialityResult is_monomialized(const Chart& chart, const Ideal& ideal);

// Zero locus of the pullback of the base maximal ideal, as an ideal over the
// chart coordinates.
Ideal fiber_ideal(const Chart& chart);

}  // namespace lojex
