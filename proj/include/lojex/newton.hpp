#pragma once

#include <optional>
#include <vector>

#include "lojex/ideal.hpp"

namespace lojex {

// Supporting inequality normal . x >= rhs with normal >= 0, primitive.
struct Facet {
  std::vector<Integer> normal;
  Integer rhs;

  friend bool operator==(const Facet&, const Facet&) = default;
};

// conv(points) + R^n_+ for n <= 3.
struct NewtonPolyhedron {
  std::size_t dim = 0;
  std::vector<std::vector<unsigned>> vertices;  // sorted
  std::vector<Facet> facets;                    // sorted

  bool contains(const std::vector<Rational>& point) const;
  // Largest t with t*e_j outside the interior: the j-th axis intercept.
  // nullopt when the polyhedron misses the axis.
  std::optional<Rational> intercept(std::size_t j) const;
};

NewtonPolyhedron newton_polyhedron(const std::vector<std::vector<unsigned>>& points);
NewtonPolyhedron newton_polyhedron(const Polynomial& f);

// Largest axis intercept of the Newton polyhedron of a monomial ideal of
// finite colength.
Rational monomial_loj(const Ideal& ideal);

// Kouchnirenko number of a convenient f with f(0) = 0, n <= 3.
Integer newton_number(const Polynomial& f);

Ideal jacobian_ideal(const Polynomial& f);

// Local colength of the Jacobian ideal at the origin; nullopt for a
// non-isolated singularity.
std::optional<std::size_t> milnor_number(const Polynomial& f);

}  // namespace lojex
