#include <doctest.h>

#include "lojex/loj.hpp"
#include "lojex/newton.hpp"
#include "newton_oracle.hpp"
#include "support.hpp"

using namespace lojex;
using lojex::testing::P;

namespace {

const char* kExample2 = "y^6 + z^4 + x*(x - 3*z)^2";

// Solve A c = b exactly; nullopt when A is singular.
std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      Rational f = a[i][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[i][k] -= f * a[col][k];
      b[i] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

// Membership in conv(points) + R^n_+ by Caratheodory: (p, 1) is a
// nonnegative combination of n+1 independent vectors among (v, 1) and (e_j, 0).
bool hull_oracle(const std::vector<std::vector<unsigned>>& points, const std::vector<Rational>& p) {
  const std::size_t n = p.size();
  std::vector<std::vector<Rational>> gens;
  for (const auto& v : points) {
    std::vector<Rational> g(v.begin(), v.end());
    g.push_back(1);
    gens.push_back(g);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> e(n + 1, 0);
    e[j] = 1;
    gens.push_back(e);
  }
  std::vector<Rational> target(p);
  target.push_back(1);
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t)> search = [&](std::size_t from) {
    if (pick.size() == n + 1) {
      std::vector<std::vector<Rational>> a(n + 1, std::vector<Rational>(n + 1));
      for (std::size_t r = 0; r <= n; ++r)
        for (std::size_t c = 0; c <= n; ++c) a[r][c] = gens[pick[c]][r];
      auto x = solve(a, target);
      return x && std::all_of(x->begin(), x->end(), [](const Rational& c) { return c >= 0; });
    }
    for (std::size_t g = from; g < gens.size(); ++g) {
      pick.push_back(g);
      bool ok = search(g + 1);
      pick.pop_back();
      if (ok) return true;
    }
    return false;
  };
  return search(0);
}

}  // namespace

TEST_CASE("newton_polyhedron examples") {
  auto seg = newton_polyhedron({{2, 0}, {0, 3}});
  CHECK(seg.vertices == std::vector<std::vector<unsigned>>{{0, 3}, {2, 0}});
  CHECK(*seg.intercept(0) == 2);
  CHECK(*seg.intercept(1) == 3);
  CHECK(std::count(seg.facets.begin(), seg.facets.end(), Facet{{3, 2}, 6}) == 1);

  auto orth = newton_polyhedron({{1, 1}});
  CHECK(orth.vertices == std::vector<std::vector<unsigned>>{{1, 1}});
  CHECK(orth.facets.size() == 2);
  CHECK_FALSE(orth.intercept(0).has_value());
  CHECK(orth.contains({Rational(1), Rational(5)}));
  CHECK_FALSE(orth.contains({Rational(0), Rational(5)}));

  // Interior and dominated points are not vertices.
  auto p = newton_polyhedron({{2, 0}, {0, 2}, {1, 1}, {3, 3}});
  CHECK(p.vertices == std::vector<std::vector<unsigned>>{{0, 2}, {2, 0}});

  CHECK_THROWS_AS(newton_polyhedron(std::vector<std::vector<unsigned>>{{1, 1, 1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(newton_polyhedron(std::vector<std::vector<unsigned>>{}), std::invalid_argument);
}

TEST_CASE("Newton polyhedron of the second example") {
  Ambient amb = testing::xyz();
  Polynomial f = P(kExample2, amb);
  auto poly = newton_polyhedron(f);
  // x^3, x^2 z, x z^2, y^6, z^4: x z^2 lies above the segment x^3 -- z^4.
  CHECK(poly.vertices.size() == 4);
  CHECK(*poly.intercept(0) == 3);
  CHECK(*poly.intercept(1) == 6);
  CHECK(*poly.intercept(2) == 4);
  std::vector<std::vector<unsigned>> pts;
  for (const auto& t : f.terms()) pts.push_back(t.monomial.exponents());
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> num(0, 30);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rational> q{make_rational(num(rng), 5), make_rational(num(rng), 5), make_rational(num(rng), 5)};
    CHECK(poly.contains(q) == hull_oracle(pts, q));
  }
}

TEST_CASE("polyhedron membership agrees with convex combinations") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 2 + trial % 2;
    std::vector<std::vector<unsigned>> pts;
    std::size_t count = 1 + rng() % 5;
    for (std::size_t k = 0; k < count; ++k) {
      std::vector<unsigned> v(n);
      for (auto& c : v) c = rng() % 6;
      pts.push_back(v);
    }
    auto poly = newton_polyhedron(pts);
    for (const auto& f : poly.facets)
      for (const auto& w : f.normal) CHECK(w >= 0);
    for (const auto& v : poly.vertices) CHECK(std::find(pts.begin(), pts.end(), v) != pts.end());
    for (int probe = 0; probe < 15; ++probe) {
      std::vector<Rational> q(n);
      for (auto& c : q) c = make_rational(static_cast<long>(rng() % 25), 4);
      CHECK(poly.contains(q) == hull_oracle(pts, q));
    }
    // Rebuilding from the vertices alone gives the same polyhedron.
    auto again = newton_polyhedron(poly.vertices);
    CHECK(again.facets == poly.facets);
    CHECK(again.vertices == poly.vertices);
  }
}

TEST_CASE("monomial_loj examples") {
  Ambient amb = testing::xy();
  CHECK(monomial_loj(Ideal::parse(amb, {"x", "y"})) == 1);
  CHECK(monomial_loj(Ideal::parse(amb, {"x^2", "y^3"})) == 3);
  Ideal three = Ideal::parse(amb, {"x^3", "x*y", "y^2"});
  CHECK(monomial_loj(three) == 3);
  auto t = auto_resolve(three, Ideal::maximal(amb));
  REQUIRE(certify(t));
  CHECK(loj_exponent(t).value == 3);
  CHECK_THROWS_AS(monomial_loj(Ideal::parse(amb, {"x + y", "y^2"})), std::invalid_argument);
  CHECK_THROWS_AS(monomial_loj(Ideal::parse(amb, {"x^2", "x*y"})), std::invalid_argument);
  CHECK(monomial_loj(Ideal::parse(testing::xyz(), {"x^2", "y^3", "z^4", "x*y*z"})) == 4);
}

TEST_CASE("monomial_loj agrees with resolution and the polygon oracle") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    Ideal ideal = testing::random_monomial_ideal_2d(rng);
    CHECK(monomial_loj(ideal) == testing::newton_loj(ideal));
    auto t = auto_resolve(ideal, Ideal::maximal(ideal.ambient()));
    REQUIRE(certify(t));
    CHECK(loj_exponent(t).value == monomial_loj(ideal));
  }
}

TEST_CASE("closure membership of monomials is Newton membership") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 15; ++trial) {
    Ideal ideal = testing::random_monomial_ideal_2d(rng, 4);
    auto t = auto_resolve(ideal, Ideal::maximal(ideal.ambient()));
    REQUIRE(certify(t));
    std::vector<std::vector<unsigned>> pts;
    for (const auto& g : ideal.generators()) pts.push_back(g.terms().front().monomial.exponents());
    auto poly = newton_polyhedron(pts);
    for (int probe = 0; probe < 10; ++probe) {
      unsigned a = rng() % 9, b = rng() % 9, p = 1 + rng() % 3;
      Polynomial f = Polynomial::monomial(ideal.ambient(), Monomial{a, b});
      bool expect = poly.contains({make_rational(a, p), make_rational(b, p)});
      CHECK(closure_member(f, ideal, p, 1, t) == expect);
    }
  }
}

TEST_CASE("newton_number examples") {
  CHECK(newton_number(P("x^2 + y^3", testing::xy())) == 2);
  CHECK(newton_number(P("x^2 + y^2 + z^2", testing::xyz())) == 1);
  CHECK(newton_number(P(kExample2, testing::xyz())) == 20);
  CHECK(newton_number(P("x^3", Ambient({"x"}))) == 2);
  CHECK_THROWS_AS(newton_number(P("x^2*y + y^3", testing::xy())), std::invalid_argument);
  CHECK_THROWS_AS(newton_number(P("1 + x^2 + y^2", testing::xy())), std::invalid_argument);
}

TEST_CASE("milnor_number examples") {
  CHECK(milnor_number(P("x^2 + y^2 + z^2", testing::xyz())) == 1u);
  CHECK(milnor_number(P("x^2 + y^3", testing::xy())) == 2u);
  CHECK(milnor_number(P(kExample2, testing::xyz())) == 25u);
  CHECK_FALSE(milnor_number(P("x^2", testing::xy())).has_value());
  CHECK(milnor_number(P("x + y^2", testing::xy())) == 0u);
}

TEST_CASE("Newton and Milnor numbers agree on diagonal forms") {
  for (unsigned a = 2; a <= 6; ++a)
    for (unsigned b = 2; b <= 6; ++b) {
      Polynomial f = P("x", testing::xy()).pow(a) + P("y", testing::xy()).pow(b);
      CHECK(newton_number(f) == (a - 1) * (b - 1));
      CHECK(milnor_number(f) == std::size_t{(a - 1) * (b - 1)});
    }
  Ambient amb = testing::xyz();
  for (unsigned c = 2; c <= 4; ++c) {
    Polynomial f = P("x^2 + y^3", amb) + P("z", amb).pow(c);
    CHECK(newton_number(f) == 2 * (c - 1));
    CHECK(milnor_number(f) == std::size_t{2 * (c - 1)});
  }
  // The second example is degenerate: the two numbers differ.
  Polynomial f2 = P(kExample2, amb);
  CHECK(newton_number(f2) != *milnor_number(f2));
}
