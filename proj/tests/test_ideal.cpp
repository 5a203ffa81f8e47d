#include <doctest.h>

#include "linear_oracle.hpp"
#include "lojex/ideal.hpp"
#include "support.hpp"

using namespace lojex;
using lojex::testing::P;

namespace {

Ideal I(const Ambient& amb, std::vector<std::string> gens) { return Ideal::parse(amb, gens); }

std::vector<std::string> strings(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

}  // namespace

TEST_CASE("groebner_basis of already reduced inputs") {
  Ambient amb = testing::xy();
  auto order = MonomialOrder::grevlex(2);
  CHECK(strings(groebner_basis(I(amb, {"x", "y"}), order)) == std::vector<std::string>{"y", "x"});
  CHECK(strings(groebner_basis(I(amb, {"x^2", "x*y", "y^2"}), order)) ==
        std::vector<std::string>{"y^2", "x*y", "x^2"});
}

TEST_CASE("groebner_basis is reduced and S-pairs vanish") {
  Ambient amb = testing::xyz();
  for (auto order : {MonomialOrder::grevlex(3), MonomialOrder::lex(3),
                     MonomialOrder(OrderKind::lex, {2, 0, 1})}) {
    Ideal ideal = I(amb, {"x^2 + y*z - 1", "x*y - z^2", "y^3 + x - 2*z"});
    const auto& gb = ideal.basis(order);
    const auto& elems = gb.elements();
    const auto& leads = gb.leading_monomials();
    for (std::size_t i = 0; i < elems.size(); ++i) {
      CHECK(elems[i].coefficient(leads[i]) == 1);
      for (std::size_t j = 0; j < elems.size(); ++j) {
        if (i == j) continue;
        for (const auto& t : elems[j].terms()) CHECK_FALSE(leads[i].divides(t.monomial));
        Monomial l = lcm(leads[i], leads[j]);
        Polynomial s = elems[i].times_monomial(l / leads[i]) - elems[j].times_monomial(l / leads[j]);
        CHECK(gb.normal_form(s).is_zero());
      }
    }
    // Same ideal as the generators.
    Ideal from_basis(amb, elems);
    CHECK(same_ideal(from_basis, ideal));
  }
}

TEST_CASE("membership agrees with the linear-algebra oracle") {
  Ambient amb = testing::xy();
  Ideal ideal = I(amb, {"x^2 + y", "x*y"});
  std::mt19937 rng(3);
  int positives = 0;
  for (int i = 0; i < 50; ++i) {
    Polynomial f = testing::random_poly(rng, amb, 4, 3);
    if (i % 2 == 0) {
      f = testing::random_poly(rng, amb, 2, 2) * ideal.generators()[0] +
          testing::random_poly(rng, amb, 2, 2) * ideal.generators()[1];
      if (i % 4 == 0) f += testing::random_poly(rng, amb, 1, 2);
    }
    if (f.total_degree() > 6) continue;
    bool gb = member(f, ideal);
    positives += gb;
    CHECK(gb == testing::linear_membership(f, ideal, static_cast<unsigned>(std::max(f.total_degree(), 2)) + 4));
  }
  CHECK(positives > 5);
}

TEST_CASE("member examples") {
  Ambient amb = testing::xy();
  CHECK(member(P("x^2 + x*y", amb), I(amb, {"x"})));
  CHECK_FALSE(member(P("y", amb), I(amb, {"x"})));
  Ideal ideal = I(amb, {"x^2", "y^3"});
  CHECK(member(P("x^2*y^3", amb), power(ideal, 2)));
  CHECK_FALSE(member(P("x^2*y^3", amb), power(ideal, 3)));
  // Same checks through a non-monomial presentation of the same ideal.
  Ideal twisted = I(amb, {"x^2 + y^3", "y^3"});
  CHECK(member(P("x^2*y^3", amb), power(twisted, 2)));
  CHECK_FALSE(member(P("x^2*y^3", amb), power(twisted, 3)));
}

TEST_CASE("power") {
  Ambient amb = testing::xy();
  CHECK(power(I(amb, {"x", "y"}), 2).to_string() == "<x^2, x*y, y^2>");
  Ideal ideal = I(amb, {"x^2", "y^3"});
  CHECK(power(ideal, 1).to_string() == ideal.to_string());
  // Product enumeration by hand.
  CHECK(same_ideal(power(ideal, 2), I(amb, {"x^4", "x^2*y^3", "y^6"})));
  CHECK(same_ideal(power(ideal, 3), I(amb, {"x^6", "x^4*y^3", "x^2*y^6", "y^9"})));
  CHECK(power(ideal, 0).is_unit());
  // Non-monomial generators are deduplicated but not minimalized.
  CHECK(power(I(amb, {"x+y", "x+y"}), 2).generators().size() == 1);
}

TEST_CASE("colength") {
  Ambient amb = testing::xy();
  CHECK(colength(I(amb, {"x", "y"})) == 1u);
  CHECK_FALSE(colength(I(amb, {"x"})).has_value());
  CHECK(colength(I(amb, {"x^2", "y^3"})) == 6u);
  auto sm = standard_monomials(I(amb, {"x^2", "y^3"}));
  std::vector<std::string> names;
  for (const auto& m : sm) names.push_back(to_string(m, amb));
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"1", "x", "x*y", "x*y^2", "y", "y^2"});
  for (unsigned m = 1; m <= 8; ++m)
    CHECK(colength(power(Ideal::maximal(amb), m)) == m * (m + 1) / 2);
  // Non-monomial: <x^2 + y, x*y> has standard monomials 1, x, y, x^2... via basis.
  CHECK(colength(I(amb, {"x^2 + y^2", "x*y"})) == 4u);
  CHECK(colength(Ideal::unit(amb)) == 0u);
}

TEST_CASE("local_colength ignores zeros away from the origin") {
  Ambient amb = testing::xy();
  // V = {(0,0), (1,0)}; the origin contributes x^2 ~ local length 2.
  Ideal ideal = I(amb, {"x^2*(x-1)", "y"});
  CHECK(colength(ideal) == 3u);
  CHECK(local_colength(ideal) == 2u);
  CHECK(local_colength(I(amb, {"x-1", "y"})) == 0u);
}

TEST_CASE("nu examples") {
  Ambient amb = testing::xy();
  Ideal m = Ideal::maximal(amb);
  CHECK(nu(P("x^2 + y^3", amb), m, 64) == OrderValue::finite(2));
  CHECK(nu(P("0", amb), m, 64) == OrderValue::infinite());
  CHECK(nu(P("x^2*y^3", amb), I(amb, {"x^2", "y^3"}), 64) == OrderValue::finite(2));
  CHECK(nu(P("x^10", amb), m, 4) == OrderValue::at_least(4));
  CHECK_THROWS_AS(nu(P("x", amb), Ideal::unit(amb), 4), std::invalid_argument);
}

TEST_CASE("nu_ideal examples") {
  Ambient amb = testing::xy();
  Ideal m = Ideal::maximal(amb);
  CHECK(nu_ideal(I(amb, {"x^2", "y^3"}), m, 64) == OrderValue::finite(2));
  CHECK(nu_ideal(m, m, 64) == OrderValue::finite(1));
  CHECK(nu_ideal(Ideal::unit(amb), m, 64) == OrderValue::finite(0));
}

TEST_CASE("order-function axioms for nu") {
  std::mt19937 rng(5);
  Ambient amb = testing::xy();
  const unsigned cap = 12;
  for (int i = 0; i < 40; ++i) {
    Ideal ideal = testing::random_monomial_ideal_2d(rng, 3);
    Polynomial f = testing::random_poly(rng, amb, 3, 3);
    Polynomial g = testing::random_poly(rng, amb, 3, 3);
    auto value = [&](const Polynomial& p) {
      OrderValue v = nu(p, ideal, cap);
      return v.kind == OrderValue::Kind::infinite ? 1000u : v.value;
    };
    unsigned vf = value(f), vg = value(g);
    CHECK(value(f + g) >= std::min(vf, vg));
    unsigned vfg = value(f * g);
    CHECK(vfg >= std::min(vf + vg, cap));
  }
  CHECK(nu(P("1", amb), Ideal::maximal(amb), 5) == OrderValue::finite(0));
}

TEST_CASE("nu_ideal does not depend on the generating set") {
  std::mt19937 rng(9);
  Ambient amb = testing::xy();
  Ideal target = I(amb, {"x^2", "x*y", "y^3"});
  for (int i = 0; i < 10; ++i) {
    Ideal j = I(amb, {"x^3 + y^4", "x*y^2"});
    std::vector<Polynomial> gens = j.generators();
    gens.push_back(testing::random_poly(rng, amb, 2, 2) * gens[0] + testing::random_poly(rng, amb, 2, 2) * gens[1]);
    Ideal j2(amb, gens);
    CHECK(nu_ideal(j, target, 16) == nu_ideal(j2, target, 16));
  }
}

TEST_CASE("nubar_lower") {
  Ambient amb = testing::xy();
  Ideal ideal = I(amb, {"x^2", "y^3"});
  // Brute force: nu(x^n y^n) = max{a+b : 2a <= n, 3b <= n} = floor(n/2)+floor(n/3).
  for (unsigned budget = 1; budget <= 4; ++budget) {
    Rational best = 0;
    for (unsigned n = 1; n <= (1u << budget); ++n) best = std::max(best, make_rational(n / 2 + n / 3, n));
    CHECK(nubar_lower(P("x*y", amb), ideal, budget) == best);
  }
  CHECK(nubar_lower(P("x*y", amb), ideal, 3) == make_rational(5, 6));
  CHECK(nubar_lower(P("x^2 + y^3", amb), ideal, 2) >= 1);
  Ideal principal = I(amb, {"x"});
  for (unsigned b = 1; b <= 3; ++b) CHECK(nubar_lower(P("x", amb), principal, b) == 1);
  CHECK_THROWS_AS(nubar_lower(P("x", amb), ideal, 0), std::invalid_argument);

  // Doubling subsequence is nondecreasing and n * bound >= nu(f^n).
  auto trace = nubar_lower_trace(P("x*y + y^2", amb), ideal, 4);
  for (std::size_t k = 1; k < trace.doubling.size(); ++k) CHECK(trace.doubling[k] >= trace.doubling[k - 1]);
  for (unsigned n = 1; n <= 6; ++n) {
    auto v = nu(P("x*y + y^2", amb).pow(n), ideal, 64);
    CHECK(trace.bound * n >= v.value);
  }
}

TEST_CASE("samuel_multiplicity") {
  Ambient amb = testing::xy();
  CHECK(samuel_multiplicity(Ideal::maximal(amb)) == 1);
  CHECK(samuel_multiplicity(I(amb, {"x^2", "y^3"})) == 6);
  CHECK(samuel_multiplicity(I(amb, {"x^2 + y^3", "x*y"})) == 5);
  CHECK_THROWS_AS(samuel_multiplicity(I(amb, {"x"})), std::invalid_argument);
}
