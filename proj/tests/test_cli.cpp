#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using lojex::cli::run;

namespace {

const fs::path kFixtures = LOJEX_FIXTURES_DIR;
const fs::path kGolden = LOJEX_GOLDEN_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result lojex_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "lojex");
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return (kFixtures / name).string(); }

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "lojex_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_temp(const std::string& name, const std::string& text) {
  fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Compares against tests/golden/<name>; LOJEX_UPDATE_GOLDEN=1 rewrites it.
void check_golden(const std::string& name, const std::string& actual) {
  fs::path p = kGolden / name;
  if (std::getenv("LOJEX_UPDATE_GOLDEN")) std::ofstream(p) << actual;
  REQUIRE(fs::exists(p));
  CHECK(slurp(p) == actual);
}

struct GoldenCase {
  std::string name;
  std::vector<std::string> args;
  int code;
};

std::vector<GoldenCase> golden_cases() {
  return {
      {"loj_ex1", {"loj", fixture("ex1.problem"), "--plan", fixture("ex1.plan")}, 0},
      {"loj_ex2", {"loj", fixture("ex2.problem"), "--gradient", "--plan", fixture("ex2.plan")}, 0},
      {"mult_ex1", {"mult", fixture("ex1.problem")}, 0},
      {"milnor_ex2", {"milnor", fixture("ex2.problem")}, 0},
      {"newton_ex2", {"newton", fixture("ex2.problem")}, 0},
      {"nubar_cusp", {"nubar", fixture("cusp.problem"), "--budget", "3"}, 0},
      {"resolve_cusp", {"resolve", fixture("cusp.problem")}, 0},
      {"verify_ex1", {"verify", fixture("ex1.tree")}, 0},
      {"verify_truncated", {"verify", fixture("ex1_truncated.tree")}, 4},
  };
}

}  // namespace

TEST_CASE("golden outputs in text and structured mode") {
  for (const auto& g : golden_cases()) {
    CAPTURE(g.name);
    Result text = lojex_cli(g.args);
    CHECK(text.code == g.code);
    check_golden(g.name + ".txt", text.out);
    auto json_args = g.args;
    json_args.push_back("--json");
    Result js = lojex_cli(json_args);
    CHECK(js.code == g.code);
    check_golden(g.name + ".json", js.out);
  }
}

TEST_CASE("structured output carries the same numbers as text") {
  auto both = [](std::vector<std::string> args) {
    Result text = lojex_cli(args);
    args.push_back("--json");
    Result js = lojex_cli(args);
    return std::make_pair(text.out, nlohmann::json::parse(js.out));
  };
  {
    auto [text, js] = both({"loj", fixture("ex1.problem"), "--plan", fixture("ex1.plan")});
    CHECK(js["result"]["L"] == "35/6");
    CHECK(js["result"]["L_mixed"] == "5+5/6");
    CHECK(text.find("L = 35/6 (5+5/6)\n") != std::string::npos);
    CHECK(js["verification"]["passed"] == true);
    CHECK(js["divisors"].size() == 26);
    CHECK(js["inputs"]["problem"]["sha256"].get<std::string>().size() == 64);
  }
  {
    auto [text, js] = both({"loj", fixture("ex2.problem"), "--gradient", "--plan", fixture("ex2.plan")});
    CHECK(js["result"]["L"] == "5");
    CHECK(js["result"]["determinacy"] == 6);
    CHECK(text.find("L = 5\n") != std::string::npos);
    CHECK(text.find("determinacy = 6\n") != std::string::npos);
  }
  {
    auto [text, js] = both({"mult", fixture("ex1.problem")});
    CHECK(js["result"]["e"] == 80);
    CHECK(text.find("e = 80\n") != std::string::npos);
  }
  {
    auto [text, js] = both({"milnor", fixture("ex2.problem")});
    CHECK(js["result"]["milnor"] == 25);
    CHECK(text.find("milnor = 25\n") != std::string::npos);
  }
  {
    auto [text, js] = both({"newton", fixture("ex2.problem")});
    CHECK(js["result"]["newton"] == "20");
    CHECK(text.find("newton = 20\n") != std::string::npos);
  }
  {
    auto [text, js] = both({"nubar", fixture("cusp.problem"), "--budget", "3"});
    CHECK(js["result"]["nubar_lower"] == "5/6");
    CHECK(text.find("ν̄ ≥ 5/6\n") != std::string::npos);
  }
}

TEST_CASE("small problems") {
  auto value = [](const std::string& problem, std::vector<std::string> args) {
    auto p = write_temp("small.problem", problem);
    args.insert(args.begin() + 1, p.string());
    return lojex_cli(args);
  };
  CHECK(value("vars: x y\nI: x; y\n", {"loj"}).out.find("L = 1\n") != std::string::npos);
  CHECK(value("vars: x y\nI: x; y\n", {"mult"}).out.find("e = 1\n") != std::string::npos);
  CHECK(value("vars: x y\nI: x^2; y^3\n", {"mult"}).out.find("e = 6\n") != std::string::npos);
  CHECK(value("vars: x y z\nf: x^2 + y^2 + z^2\n", {"milnor"}).out.find("milnor = 1\n") != std::string::npos);
  CHECK(value("vars: x y\nf: x^2\n", {"milnor"}).out.find("milnor = infinite\n") != std::string::npos);
  Result lex = value("vars: x y\nI: x^2 + y^3; x*y\n", {"loj", "--order", "lex"});
  Result grevlex = value("vars: x y\nI: x^2 + y^3; x*y\n", {"loj"});
  CHECK(lex.code == 0);
  CHECK(lex.out == grevlex.out);
}

TEST_CASE("exit codes") {
  auto code = [](const std::string& problem, std::vector<std::string> args) {
    auto p = write_temp("codes.problem", problem);
    args.insert(args.begin() + 1, p.string());
    return lojex_cli(args).code;
  };
  CHECK(code("vars: x y\nI: x^2; y^3\n", {"loj"}) == 0);
  CHECK(code("vars: x y\nI: x*y\n", {"loj"}) == 2);
  CHECK(code("vars: x y\nI: x + 1; y\n", {"loj"}) == 2);
  CHECK(code("vars: x y\nI: x^2; y^3\n", {"milnor"}) == 2);
  CHECK(code("vars: x y\nI: x^2; y^3\n", {"loj", "--budget", "1"}) == 3);
  CHECK(code("vars: x y\nf: x^2*y + y^3\n", {"newton"}) == 2);
  CHECK(code("vars: x y\nI: x^2; w\n", {"loj"}) == 2);
  CHECK(code("vars: x y\nI: x^2; y^3\n", {"loj", "--order", "lexx"}) == 2);
  CHECK(lojex_cli({"frobnicate"}).code == 2);
  CHECK(lojex_cli({"loj", "/nonexistent/problem"}).code == 2);
  CHECK(lojex_cli({"verify", fixture("ex1_truncated.tree")}).code == 4);

  Result budget = lojex_cli({"loj", write_temp("b.problem", "vars: x y\nI: x^2; y^3\n").string(), "--budget", "1"});
  CHECK(budget.err.find("frontier") != std::string::npos);
}

TEST_CASE("a written tree verifies") {
  fs::path tree = scratch("roundtrip.tree");
  fs::path plan = scratch("roundtrip.plan");
  Result r = lojex_cli({"loj", fixture("ex1.problem"), "--tree-out", tree.string(), "--plan-out", plan.string()});
  REQUIRE(r.code == 0);
  CHECK(lojex_cli({"verify", tree.string()}).code == 0);
  Result replay = lojex_cli({"loj", fixture("ex1.problem"), "--plan", plan.string()});
  CHECK(replay.code == 0);
  CHECK(replay.out.find("L = 35/6") != std::string::npos);
  // The shipped tree is what the shipped plan produces.
  CHECK(slurp(tree) == slurp(kFixtures / "ex1.tree"));
}

TEST_CASE("structured reports are reproducible") {
  for (const auto& g : golden_cases()) {
    auto args = g.args;
    args.push_back("--json");
    CHECK(lojex_cli(args).out == lojex_cli(args).out);
  }
}
