#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "lojex/loj.hpp"
#include "lojex/newton.hpp"
#include "lojex/resolve.hpp"

namespace lojex::cli {

using Json = nlohmann::ordered_json;

namespace {

// A failure carrying its exit code.
struct Failure {
  int code;
  std::string message;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kPrecondition, "cannot read " + path};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kPrecondition, "cannot write " + path};
  out << text;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream s;
  for (unsigned i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return s.str();
}

Json input_entry(const std::string& path, const std::string& text) {
  return Json{{"file", std::filesystem::path(path).filename().string()}, {"sha256", sha256_hex(text)}};
}

// p/q, with the mixed form when it differs.
std::string fraction(const Rational& r) {
  std::string plain = to_string(r);
  std::string mixed = to_mixed_string(r);
  return mixed == plain ? plain : plain + " (" + mixed + ")";
}

Json ideal_json(const Ideal& ideal) {
  Json gens = Json::array();
  for (const auto& g : ideal.generators()) gens.push_back(g.to_string());
  return gens;
}

Json steps_json(const std::vector<PlanStep>& steps) {
  Json out = Json::array();
  for (const auto& s : steps) {
    Json change = Json::object();
    for (const auto& [v, p] : s.change) change[v] = p.to_string();
    out.push_back({{"chart", s.chart}, {"change", change}, {"center", s.center}});
  }
  return out;
}

Json divisors_json(const ResolutionTree& t) {
  Json out = Json::array();
  for (const auto& [d, r] : t.divisors)
    out.push_back({{"id", d}, {"a", r.a}, {"b", r.b}, {"born_in", r.born_in}, {"step", r.birth_step}});
  return out;
}

Json report_json(const VerificationReport& r) {
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) verdicts.push_back({{"condition", v.condition}, {"passed", v.passed}, {"detail", v.detail}});
  return {{"passed", r.passed()}, {"verdicts", verdicts}, {"notes", r.notes}};
}

void print_table(std::ostream& out, const ResolutionTree& t) {
  out << "divisors:\n";
  for (const auto& [d, r] : t.divisors)
    out << "  E" << d << "  a=" << r.a << "  b=" << r.b << "  born in " << r.born_in << " at step " << r.birth_step << "\n";
}

// Shared options and state of one invocation.
struct Options {
  std::string problem_path;
  std::string plan_path;
  std::string tree_out;
  std::string plan_out;
  std::string tree_path;
  std::string f_text;
  unsigned budget = 32;
  unsigned nubar_budget = 3;
  unsigned cap = 64;
  std::string order = "grevlex";
  bool gradient = false;
  bool json = false;
};

struct Context {
  Options opt;
  std::ostream& out;
  Json doc;
  std::ostringstream text;
  Problem problem;
};

void load_problem(Context& c) {
  std::string text = read_file(c.opt.problem_path);
  c.doc["inputs"]["problem"] = input_entry(c.opt.problem_path, text);
  try {
    c.problem = parse_problem(text);
  } catch (const std::exception& e) {
    throw Failure{kPrecondition, c.opt.problem_path + ": " + e.what()};
  }
}

Polynomial require_f(Context& c) {
  if (!c.opt.f_text.empty()) {
    try {
      return parse_poly(c.opt.f_text, c.problem.vars);
    } catch (const std::exception& e) {
      throw Failure{kPrecondition, std::string("--f: ") + e.what()};
    }
  }
  if (!c.problem.f) throw Failure{kPrecondition, "problem has no f"};
  return *c.problem.f;
}

// I from the problem, or the Jacobian ideal of f with --gradient.
Ideal main_ideal(Context& c) {
  Ideal I = [&] {
    if (c.opt.gradient) return jacobian_ideal(require_f(c));
    if (!c.problem.I) throw Failure{kPrecondition, "problem has no I (use --gradient to take the Jacobian of f)"};
    return *c.problem.I;
  }();
  c.doc["ideal"] = {{"vars", c.problem.vars.names()}, {"I", ideal_json(I)}};
  c.text << "I = " << I.to_string() << "\n";
  return I;
}

void require_finite_colength(const Ideal& I) {
  for (const auto& g : I.generators())
    if (g.constant_term() != 0) throw Failure{kPrecondition, "I does not vanish at the origin"};
  if (!colength(I) && !local_colength(I, 32))
    throw Failure{kPrecondition, "I does not have finite colength at the origin"};
}

ResolutionTree resolve_tree(Context& c, const Ideal& I, const Ideal& J) {
  require_finite_colength(I);
  ResolutionTree t = [&] {
    if (!c.opt.plan_path.empty()) {
      std::string plan_text = read_file(c.opt.plan_path);
      c.doc["inputs"]["plan"] = input_entry(c.opt.plan_path, plan_text);
      try {
        return execute_plan(I, J, parse_plan(plan_text, I.ambient()));
      } catch (const std::invalid_argument& e) {
        throw Failure{kPrecondition, c.opt.plan_path + ": " + e.what()};
      } catch (const PlanError& e) {
        throw Failure{kPrecondition, c.opt.plan_path + ": " + e.what()};
      }
    }
    try {
      return auto_resolve(I, J, c.opt.budget);
    } catch (const BudgetExhausted& e) {
      c.doc["frontier"] = e.frontier();
      c.doc["steps"] = steps_json(e.partial().steps);
      std::string msg = "budget of " + std::to_string(c.opt.budget) + " blow-ups exhausted; frontier:";
      for (const auto& id : e.frontier()) msg += " " + id;
      throw Failure{kBudget, msg};
    } catch (const NotAlignable& e) {
      c.doc["steps"] = steps_json(e.partial().steps);
      throw Failure{kVerification, e.what()};
    }
  }();
  certify(t);
  std::size_t blowups = 0;
  for (const auto& s : t.steps) blowups += s.center.empty() ? 0 : 1;
  c.doc["resolution"] = {{"source", c.opt.plan_path.empty() ? "auto" : "plan"}, {"blowups", blowups},
                         {"leaves", t.leaves.size()}};
  c.doc["steps"] = steps_json(t.steps);
  c.doc["divisors"] = divisors_json(t);
  c.doc["verification"] = report_json(*t.report);
  c.text << "resolution: " << (c.opt.plan_path.empty() ? "auto" : "plan") << ", " << blowups << " blow-ups, "
         << t.leaves.size() << " leaves\n";
  print_table(c.text, t);
  c.text << t.report->to_string();
  if (!c.opt.tree_out.empty()) write_file(c.opt.tree_out, write_tree(t));
  if (!c.opt.plan_out.empty()) write_file(c.opt.plan_out, format_plan(t.steps));
  if (!t.verified()) throw Failure{kVerification, "verification failed"};
  return t;
}

void cmd_loj(Context& c) {
  load_problem(c);
  Ideal I = main_ideal(c);
  auto t = resolve_tree(c, I, Ideal::maximal(I.ambient()));
  auto L = loj_exponent(t);
  const auto& w = t.divisors.at(L.witness);
  c.doc["result"] = {{"L", to_string(L.value)}, {"L_mixed", to_mixed_string(L.value)}, {"witness", L.witness}};
  c.text << "L = " << fraction(L.value) << "\n";
  c.text << "witness: E" << L.witness << " (a=" << w.a << ", b=" << w.b << ")\n";
  if (c.opt.gradient) {
    unsigned d = determinacy_degree(L.value);
    c.doc["result"]["determinacy"] = d;
    c.text << "determinacy = " << d << "\n";
  }
}

void cmd_resolve(Context& c) {
  load_problem(c);
  Ideal I = main_ideal(c);
  Ideal J = c.problem.J ? *c.problem.J : Ideal::maximal(I.ambient());
  c.doc["ideal"]["J"] = ideal_json(J);
  c.text << "J = " << J.to_string() << "\n";
  auto t = resolve_tree(c, I, J);
  c.text << "plan:\n" << format_plan(t.steps);
  Json result = Json::object();
  try {
    auto m = mu(t);
    result["mu"] = to_string(m.value);
    c.text << "mu = " << fraction(m.value) << "\n";
    if (m.value != 0) {
      auto th = theta(t);
      result["theta"] = to_string(th.value);
      c.text << "theta = " << fraction(th.value) << "\n";
    }
  } catch (const std::invalid_argument& e) {
    result["mu"] = nullptr;
    c.text << "mu undefined: " << e.what() << "\n";
  }
  c.doc["result"] = result;
}

void cmd_mult(Context& c) {
  load_problem(c);
  Ideal I = main_ideal(c);
  auto len = colength(I);
  if (!len) throw Failure{kPrecondition, "I does not have finite colength"};
  auto trace = samuel_multiplicity_trace(I);
  c.doc["result"] = {{"e", trace.multiplicity}, {"colength", *len}, {"hilbert_samuel", trace.colengths}};
  c.text << "e = " << trace.multiplicity << "\n";
  c.text << "colength = " << *len << "\n";
  c.text << "colength(I^m), m = 1..: ";
  for (std::size_t i = 0; i < trace.colengths.size(); ++i) c.text << (i ? " " : "") << trace.colengths[i];
  c.text << "\n";
}

void cmd_milnor(Context& c) {
  load_problem(c);
  Polynomial f = require_f(c);
  if (f.constant_term() != 0) throw Failure{kPrecondition, "f(0) != 0"};
  c.doc["ideal"] = {{"vars", c.problem.vars.names()}, {"f", f.to_string()}};
  auto m = milnor_number(f);
  c.doc["result"] = {{"milnor", m ? Json(*m) : Json("infinite")}};
  c.text << "f = " << f.to_string() << "\n";
  c.text << "milnor = " << (m ? std::to_string(*m) : "infinite") << "\n";
}

void cmd_newton(Context& c) {
  load_problem(c);
  Polynomial f = require_f(c);
  c.doc["ideal"] = {{"vars", c.problem.vars.names()}, {"f", f.to_string()}};
  Integer nu;
  try {
    nu = newton_number(f);
  } catch (const std::invalid_argument& e) {
    throw Failure{kPrecondition, e.what()};
  }
  auto poly = newton_polyhedron(f);
  Json verts = Json::array();
  for (const auto& v : poly.vertices) verts.push_back(v);
  c.doc["result"] = {{"newton", nu.get_str()}, {"vertices", verts}};
  c.text << "f = " << f.to_string() << "\n";
  c.text << "vertices:";
  for (const auto& v : poly.vertices) {
    c.text << " (";
    for (std::size_t i = 0; i < v.size(); ++i) c.text << (i ? "," : "") << v[i];
    c.text << ")";
  }
  c.text << "\nnewton = " << nu.get_str() << "\n";
}

void cmd_nubar(Context& c) {
  load_problem(c);
  Ideal I = main_ideal(c);
  Polynomial f = require_f(c);
  if (c.opt.nubar_budget == 0 || c.opt.nubar_budget > 12)
    throw Failure{kPrecondition, "nubar budget must be between 1 and 12"};
  NubarTrace trace;
  OrderValue direct;
  try {
    trace = nubar_lower_trace(f, I, c.opt.nubar_budget);
    direct = nu(f, I, c.opt.cap);
  } catch (const std::invalid_argument& e) {
    throw Failure{kPrecondition, e.what()};
  }
  Json doubling = Json::array();
  for (const auto& u : trace.doubling) doubling.push_back(to_string(u));
  c.doc["result"] = {{"f", f.to_string()}, {"nu", direct.to_string()}, {"nubar_lower", to_string(trace.bound)},
                     {"budget", c.opt.nubar_budget}, {"doubling", doubling}};
  c.text << "f = " << f.to_string() << "\n";
  c.text << "ν(f) = " << direct.to_string() << "\n";
  for (std::size_t k = 0; k < trace.doubling.size(); ++k)
    c.text << "  ν(f^" << (1u << k) << ")/" << (1u << k) << " = " << to_string(trace.doubling[k]) << "\n";
  c.text << "ν̄ ≥ " << fraction(trace.bound) << "\n";
}

void cmd_verify(Context& c) {
  std::string text = read_file(c.opt.tree_path);
  c.doc["inputs"]["tree"] = input_entry(c.opt.tree_path, text);
  ResolutionTree t = [&] {
    try {
      return read_tree(text);
    } catch (const std::exception& e) {
      throw Failure{kPrecondition, c.opt.tree_path + ": " + e.what()};
    }
  }();
  auto report = verify_log_resolution(t);
  c.doc["steps"] = steps_json(t.steps);
  c.doc["divisors"] = divisors_json(t);
  c.doc["verification"] = report_json(report);
  c.text << report.to_string();
  if (!report.passed()) throw Failure{kVerification, "verification failed"};
}

}  // namespace

Problem parse_problem(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> fields;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("line " + std::to_string(number) + ": expected 'key: value'");
    fields.emplace_back(trim(line.substr(0, colon)), trim(line.substr(colon + 1)));
  }
  Problem p;
  bool have_vars = false;
  for (const auto& [k, v] : fields)
    if (k == "vars") {
      std::vector<std::string> names;
      std::istringstream vs(v);
      for (std::string n; vs >> n;) names.push_back(n);
      p.vars = Ambient(names);
      have_vars = true;
    }
  if (!have_vars) throw std::invalid_argument("missing 'vars:' line");
  for (const auto& [k, v] : fields) {
    if (k == "vars") continue;
    if (k == "I" || k == "J") {
      auto gens = split(v, ';');
      if (gens.empty()) throw std::invalid_argument(k + " has no generators");
      (k == "I" ? p.I : p.J) = Ideal::parse(p.vars, gens);
    } else if (k == "f") {
      p.f = parse_poly(v, p.vars);
    } else {
      throw std::invalid_argument("unknown key '" + k + "'");
    }
  }
  if (!p.I && !p.f) throw std::invalid_argument("problem needs I or f");
  return p;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lojasiewicz exponents from explicit log-resolutions"};
  app.require_subcommand(1);
  Options opt;
  auto with_problem = [&](CLI::App* sub) {
    sub->add_option("problem", opt.problem_path, "problem file")->required();
    sub->add_option("--order", opt.order, "monomial order for Groebner bases")->check(CLI::IsMember({"grevlex", "lex"}));
    sub->add_flag("--json", opt.json, "structured output");
  };
  auto with_resolution = [&](CLI::App* sub) {
    sub->add_option("--plan", opt.plan_path, "blow-up plan (default: automatic)");
    sub->add_option("--budget", opt.budget, "blow-up budget for the automatic strategy");
    sub->add_flag("--gradient", opt.gradient, "use the Jacobian ideal of f as I");
    sub->add_option("--tree-out", opt.tree_out, "write the resolution tree");
    sub->add_option("--plan-out", opt.plan_out, "write the executed plan");
  };
  auto* loj = app.add_subcommand("loj", "Lojasiewicz exponent L = max a/b");
  with_problem(loj);
  with_resolution(loj);
  auto* resolve = app.add_subcommand("resolve", "log-resolution with divisor table, mu and theta");
  with_problem(resolve);
  with_resolution(resolve);
  auto* mult = app.add_subcommand("mult", "Samuel multiplicity and colength");
  with_problem(mult);
  mult->add_flag("--gradient", opt.gradient, "use the Jacobian ideal of f as I");
  auto* milnor = app.add_subcommand("milnor", "Milnor number of f");
  with_problem(milnor);
  auto* newton = app.add_subcommand("newton", "Kouchnirenko Newton number of f");
  with_problem(newton);
  auto* nubar = app.add_subcommand("nubar", "certified lower bound for the reduced order of f along I");
  with_problem(nubar);
  nubar->add_option("--f", opt.f_text, "polynomial (default: f from the problem)");
  nubar->add_option("--budget", opt.nubar_budget, "powers up to 2^budget (default 3)");
  nubar->add_option("--cap", opt.cap, "cap for the direct nu(f) computation");
  nubar->add_flag("--gradient", opt.gradient, "use the Jacobian ideal of f as I");
  auto* verify = app.add_subcommand("verify", "check a stored resolution tree");
  verify->add_option("tree", opt.tree_path, "tree file")->required();
  verify->add_flag("--json", opt.json, "structured output");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kPrecondition;
  }

  set_default_order(opt.order == "lex" ? OrderKind::lex : OrderKind::grevlex);
  CLI::App* chosen = app.get_subcommands().front();
  Context c{opt, out, Json::object(), {}, {}};
  c.doc["command"] = chosen->get_name();
  c.doc["inputs"] = Json::object();
  int code = kOk;
  std::string message;
  try {
    if (chosen == loj) cmd_loj(c);
    else if (chosen == resolve) cmd_resolve(c);
    else if (chosen == mult) cmd_mult(c);
    else if (chosen == milnor) cmd_milnor(c);
    else if (chosen == newton) cmd_newton(c);
    else if (chosen == nubar) cmd_nubar(c);
    else cmd_verify(c);
  } catch (const Failure& f) {
    code = f.code;
    message = f.message;
  } catch (const std::exception& e) {
    code = kPrecondition;
    message = e.what();
  }
  if (code != kOk) {
    c.doc["error"] = message;
    c.doc["exit"] = code;
  }
  if (opt.json) {
    out << c.doc.dump(2) << "\n";
  } else {
    out << c.text.str();
  }
  if (code != kOk) err << "error: " << message << "\n";
  return code;
}

}  // namespace lojex::cli
