#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "lojex/resolve.hpp"
#include "support.hpp"

using namespace lojex;
using lojex::testing::P;

namespace {

Ideal I(const Ambient& amb, std::vector<std::string> gens) { return Ideal::parse(amb, gens); }

Rational max_ratio(const ResolutionTree& t) {
  Rational best = 0;
  for (const auto& [d, r] : t.divisors) best = std::max(best, make_rational(r.a, r.b));
  return best;
}

std::multiset<std::pair<unsigned, unsigned>> pairs(const ResolutionTree& t) {
  std::multiset<std::pair<unsigned, unsigned>> out;
  for (const auto& [d, r] : t.divisors) out.emplace(r.a, r.b);
  return out;
}

const Verdict& verdict(const VerificationReport& r, const std::string& prefix) {
  for (const auto& v : r.verdicts)
    if (v.condition.rfind(prefix, 0) == 0) return v;
  throw std::runtime_error("no verdict " + prefix);
}

}  // namespace

TEST_CASE("plan text round trip") {
  Ambient amb = testing::xyz();
  const std::string text =
      "# comment\n"
      "chart root\n"
      "change x -> x + 3*z\n"
      "center x y z\n"
      "\n"
      "chart root.z   # trailing comment\n"
      "center x z\n";
  auto plan = parse_plan(text, amb);
  REQUIRE(plan.size() == 2);
  CHECK(plan[0].chart == "root");
  CHECK(plan[0].change.size() == 1);
  CHECK(plan[0].change[0].second == P("x + 3*z", amb));
  CHECK(plan[1].center == std::vector<std::string>{"x", "z"});
  CHECK(parse_plan(format_plan(plan), amb) == plan);

  CHECK_THROWS_AS(parse_plan("center x y\n", amb), std::invalid_argument);
  CHECK_THROWS_AS(parse_plan("chart root\ncenter x\n", amb), std::invalid_argument);
  CHECK_THROWS_AS(parse_plan("chart root\ncenter x w\n", amb), std::invalid_argument);
  CHECK_THROWS_AS(parse_plan("chart root\n", amb), std::invalid_argument);
  CHECK_THROWS_AS(parse_plan("chart root\nexplode x y\n", amb), std::invalid_argument);
}

TEST_CASE("execute_plan on the maximal ideal of the plane") {
  Ambient amb = testing::xy();
  Ideal m = Ideal::maximal(amb);
  auto t = execute_plan(m, m, parse_plan("chart root\ncenter x y\n", amb));
  CHECK(t.leaves.size() == 2);
  REQUIRE(t.divisors.size() == 1);
  CHECK(t.divisors.at(1).a == 1);
  CHECK(t.divisors.at(1).b == 1);
  CHECK(verify_log_resolution(t).passed());
}

TEST_CASE("execute_plan on the cusp ideal") {
  Ambient amb = testing::xy();
  const std::string plan =
      "chart root\ncenter x y\n\n"
      "chart root.y\ncenter x y\n\n"
      "chart root.y.x\ncenter x y\n";
  auto t = execute_plan(I(amb, {"x^2", "y^3"}), Ideal::maximal(amb), parse_plan(plan, amb));
  CHECK(certify(t));
  CHECK(max_ratio(t) == 3);
}

TEST_CASE("execute_plan rejects bad plans") {
  Ambient amb = testing::xy();
  Ideal cusp = I(amb, {"x^2", "y^3"});
  Ideal m = Ideal::maximal(amb);
  CHECK_THROWS_AS(execute_plan(cusp, m, parse_plan("chart root.x\ncenter x y\n", amb)), PlanError);
  // The z-axis is not contained in V(x, y, z).
  Ambient amb3 = testing::xyz();
  CHECK_THROWS_AS(execute_plan(Ideal::maximal(amb3), Ideal::maximal(amb3), parse_plan("chart root\ncenter x y\n", amb3)),
                  PlanError);
  CHECK_THROWS_AS(execute_plan(I(amb, {"x + 1", "y"}), m, {}), PlanError);
  CHECK_THROWS_AS(execute_plan(I(amb, {"x*y"}), m, {}), PlanError);
  // A coordinate change may not move a divisor.
  CHECK_THROWS_AS(execute_plan(cusp, m, parse_plan("chart root\ncenter x y\n\nchart root.x\nchange x -> x + y\n", amb)),
                  PlanError);
}

TEST_CASE("finite colength is judged at the origin") {
  Ambient amb = testing::xy();
  // Vanishes at the origin and at (1, 0).
  Ideal two_points = I(amb, {"x^2*(x - 1)", "y"});
  auto t = auto_resolve(two_points, Ideal::maximal(amb));
  CHECK(certify(t));
  CHECK(max_ratio(t) == 2);
}

TEST_CASE("auto_resolve examples") {
  Ambient amb = testing::xy();
  auto t1 = auto_resolve(I(amb, {"x", "y"}), Ideal::maximal(amb));
  CHECK(t1.steps.size() == 1);
  CHECK(certify(t1));

  auto t2 = auto_resolve(I(amb, {"x^2", "y^3"}), Ideal::maximal(amb), 5);
  CHECK(certify(t2));
  CHECK(max_ratio(t2) == 3);

  CHECK_THROWS_AS(auto_resolve(I(amb, {"x^2", "y^3"}), Ideal::maximal(amb), 1), BudgetExhausted);
  try {
    auto_resolve(I(amb, {"x^2", "y^3"}), Ideal::maximal(amb), 1);
  } catch (const BudgetExhausted& e) {
    CHECK_FALSE(e.frontier().empty());
    CHECK(e.partial().steps.size() == 1);
  }
}

TEST_CASE("auto_resolve on pure powers matches the larger exponent") {
  std::mt19937 rng(3);
  Ambient amb = testing::xy();
  for (int trial = 0; trial < 12; ++trial) {
    unsigned a = 2 + rng() % 4, b = 2 + rng() % 4;
    Ideal ideal(amb, {P("x", amb).pow(a), P("y", amb).pow(b)});
    auto t = auto_resolve(ideal, Ideal::maximal(amb));
    REQUIRE(certify(t));
    CHECK(max_ratio(t) == std::max(a, b));
  }
}

TEST_CASE("auto_resolve reports charts it cannot align") {
  Ambient amb = testing::xyz();
  // The strict transform meets an exceptional plane at a point off every
  // coordinate line of the charts that see it.
  Ideal ideal = I(amb, {"x^2 + y^3", "z^2 + x*y", "y^4"});
  try {
    auto_resolve(ideal, Ideal::maximal(amb));
    FAIL("expected NotAlignable");
  } catch (const NotAlignable& e) {
    CHECK(e.partial().leaves.count(e.chart()));
    CHECK_FALSE(verify_log_resolution(e.partial()).passed());
  }
}

TEST_CASE("verifier flags truncated and edited trees") {
  Ambient amb = testing::xy();
  Ideal cusp = I(amb, {"x^2", "y^3"});
  auto full = auto_resolve(cusp, Ideal::maximal(amb));
  CHECK(verify_log_resolution(full).passed());

  auto truncated = execute_plan(cusp, Ideal::maximal(amb), {full.steps.front()});
  auto report = verify_log_resolution(truncated);
  CHECK_FALSE(report.passed());
  CHECK_FALSE(verdict(report, "(iv)").passed);
  CHECK(verdict(report, "(iv)").detail.find("root.y") != std::string::npos);

  auto edited = full;
  edited.divisors.begin()->second.a += 1;
  auto r2 = verify_log_resolution(edited);
  CHECK_FALSE(r2.passed());
  CHECK_FALSE(verdict(r2, "divisor table").passed);
  CHECK(verdict(r2, "(iv)").passed);
}

TEST_CASE("tree text round trip") {
  Ambient amb = testing::xyz();
  Ideal ideal = I(amb, {"x^2 + y*z", "y^3", "z^3"});
  auto t = auto_resolve(ideal, Ideal::maximal(amb));
  std::string text = write_tree(t);
  auto back = read_tree(text);
  CHECK(write_tree(back) == text);
  CHECK(verify_log_resolution(back).passed());

  // Edited multiplicity in the file is caught.
  auto pos = text.find("\nE1 a=");
  REQUIRE(pos != std::string::npos);
  std::string edited = text;
  edited.replace(pos, 6, "\nE1 a=9");
  CHECK_FALSE(verify_log_resolution(read_tree(edited)).passed());
}

TEST_CASE("divisor table invariants") {
  std::mt19937 rng(21);
  Ambient amb = testing::xy();
  for (int trial = 0; trial < 15; ++trial) {
    Ideal ideal = testing::random_monomial_ideal_2d(rng, 4);
    auto t = auto_resolve(ideal, Ideal::maximal(amb));
    REQUIRE(certify(t));
    for (const auto& [d, r] : t.divisors) CHECK(r.b >= 1);
    auto again = execute_plan(ideal, Ideal::maximal(amb), t.steps);
    CHECK(again.divisors == t.divisors);
    CHECK(write_tree(again) == write_tree(t));
  }
}

TEST_CASE("powers of the maximal ideal need one blow-up") {
  Ambient amb = testing::xyz();
  Ideal m = Ideal::maximal(amb);
  for (unsigned k = 1; k <= 5; ++k) {
    auto t = auto_resolve(power(m, k), m);
    CHECK(t.steps.size() == 1);
    CHECK(certify(t));
    CHECK(t.divisors.at(1).a == k);
    CHECK(t.divisors.at(1).b == 1);
  }
}

TEST_CASE("divisor multiplicities are invariant under linear changes") {
  std::mt19937 rng(17);
  Ambient amb = testing::xy();
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<Ideal> cases = {I(amb, {"x^2", "y^3"}), I(amb, {"x^3", "x*y", "y^2"}), I(amb, {"x^2 + y^3", "x*y"}),
                              I(amb, {"x^4", "x^2*y", "y^3"})};
  for (int trial = 0; trial < 12; ++trial) {
    const Ideal& ideal = cases[trial % cases.size()];
    auto t = auto_resolve(ideal, Ideal::maximal(amb));
    REQUIRE(certify(t));
    // Random invertible linear map as a product of elementary changes.
    std::vector<PlanStep> moved;
    Substitution back = Substitution::identity(amb);
    for (int k = 0; k < 3; ++k) {
      int c = coef(rng);
      if (c == 0) c = 2;
      std::string var = (k % 2) ? "x" : "y", other = (k % 2) ? "y" : "x";
      auto image = Polynomial::constant(amb, c) * P(var, amb) + Polynomial::constant(amb, coef(rng)) * P(other, amb);
      CoordinateChange cc = CoordinateChange::from_map(amb, {{var, image}});
      moved.push_back(PlanStep{"root", {{var, image}}, {}});
      back = cc.inverse().then(back);
    }
    std::vector<Polynomial> gens;
    for (const auto& g : ideal.generators()) gens.push_back(back.apply(g));
    Ideal transformed(amb, gens);
    for (const auto& s : t.steps) moved.push_back(s);
    auto t2 = execute_plan(transformed, Ideal::maximal(amb), moved);
    CHECK(certify(t2));
    CHECK(pairs(t2) == pairs(t));
  }
}
