#include "lojex/resolve.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace lojex {

// ---------------------------------------------------------------- plan text

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string center_names(const Ambient& amb, const std::vector<std::size_t>& center) {
  std::vector<std::string> names;
  for (auto v : center) names.push_back(amb.name(v));
  return "{" + join(names, ", ") + "}";
}

}  // namespace

std::vector<PlanStep> parse_plan(const std::string& text, const Ambient& ambient) {
  std::vector<PlanStep> plan;
  std::optional<PlanStep> cur;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("plan line " + std::to_string(lineno) + ": " + msg);
  };
  auto finish = [&]() {
    if (!cur) return;
    if (cur->change.empty() && cur->center.empty()) fail("step for chart " + cur->chart + " has neither change nor center");
    plan.push_back(std::move(*cur));
    cur.reset();
  };
  std::istringstream in(text);
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) {
      // Blank lines separate steps; comment-only lines do not.
      if (trim(raw).empty()) finish();
      continue;
    }
    auto w = words(line);
    if (w[0] == "chart") {
      if (w.size() != 2) fail("expected 'chart <id>'");
      finish();
      cur = PlanStep{w[1], {}, {}};
    } else if (w[0] == "change") {
      if (!cur) fail("'change' before 'chart'");
      if (!cur->center.empty()) fail("'change' after 'center' in the same step");
      auto arrow = line.find("->");
      if (arrow == std::string::npos) fail("expected 'change <var> -> <poly>'");
      std::string var = trim(line.substr(6, arrow - 6));
      if (!ambient.index_of(var)) fail("unknown variable '" + var + "'");
      try {
        cur->change.emplace_back(var, parse_poly(line.substr(arrow + 2), ambient));
      } catch (const ParseError& e) {
        fail(e.what());
      }
    } else if (w[0] == "center") {
      if (!cur) fail("'center' before 'chart'");
      if (!cur->center.empty()) fail("two centers in one step");
      if (w.size() < 3) fail("a center needs at least two variables");
      for (std::size_t i = 1; i < w.size(); ++i) {
        if (!ambient.index_of(w[i])) fail("unknown variable '" + w[i] + "'");
        cur->center.push_back(w[i]);
      }
    } else {
      fail("unknown directive '" + w[0] + "'");
    }
  }
  ++lineno;
  finish();
  return plan;
}

std::string format_plan(const std::vector<PlanStep>& plan) {
  std::string out;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (i) out += "\n";
    out += "chart " + plan[i].chart + "\n";
    for (const auto& [v, p] : plan[i].change) out += "change " + v + " -> " + p.to_string() + "\n";
    if (!plan[i].center.empty()) out += "center " + join(plan[i].center, " ") + "\n";
  }
  return out;
}

// ---------------------------------------------------------------- report

bool VerificationReport::passed() const {
  return !verdicts.empty() && std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

std::string VerificationReport::to_string() const {
  std::string out;
  for (const auto& v : verdicts) out += v.condition + ": " + (v.passed ? "PASS" : "FAIL") + " - " + v.detail + "\n";
  for (const auto& n : notes) out += "note: " + n + "\n";
  out += std::string("overall: ") + (passed() ? "PASS" : "FAIL") + "\n";
  return out;
}

BudgetExhausted::BudgetExhausted(ResolutionTree partial, std::vector<std::string> frontier)
    : std::runtime_error("budget exhausted at " + join(frontier, ", ")),
      partial_(std::move(partial)),
      frontier_(std::move(frontier)) {}

NotAlignable::NotAlignable(ResolutionTree partial, std::string chart, std::string locus)
    : std::runtime_error("chart " + chart + ": bad locus " + locus +
                         " is not coordinate-alignable; supply a coordinate change"),
      partial_(std::move(partial)),
      chart_(std::move(chart)) {}

// ---------------------------------------------------------------- replay

namespace {

struct Frontier {
  std::map<std::string, Chart> leaves;
  std::map<DivisorId, DivisorRecord> divisors;
  unsigned blowups = 0;
};

void check_supported_at_origin(const Ideal& I) {
  for (const auto& g : I.generators())
    if (g.constant_term() != 0) throw PlanError("I does not vanish at the origin");
  if (colength(I)) return;
  if (!local_colength(I, 32)) throw PlanError("I does not have finite colength at the origin");
}

void run_step(Frontier& f, const PlanStep& step, const Ideal& I) {
  auto it = f.leaves.find(step.chart);
  if (it == f.leaves.end()) throw PlanError("dead chart selector '" + step.chart + "'");
  Chart c = it->second;
  if (!step.change.empty()) {
    try {
      c = apply_coordinate_change(c, CoordinateChange::from_map(c.ambient, step.change));
    } catch (const std::invalid_argument& e) {
      throw PlanError("chart " + c.id + ": " + e.what());
    }
  }
  if (step.center.empty()) {
    it->second = std::move(c);
    return;
  }
  std::vector<std::size_t> center;
  for (const auto& name : step.center) center.push_back(c.ambient.require(name));
  const std::string where = "chart " + c.id + ", center " + center_names(c.ambient, center);
  const Ideal total = total_transform(c, I);
  for (const auto& g : total.generators())
    if (!g.restrict_to_zero(center).is_zero())
      throw PlanError(where + " is not inside the zero set of the total transform of I");
  for (const auto& p : c.pullback.images())
    if (!p.restrict_to_zero(center).is_zero()) throw PlanError(where + " does not lie over the origin");
  DivisorId id = ++f.blowups;
  std::vector<Chart> kids;
  try {
    kids = blow_up(c, center, id);
  } catch (const std::invalid_argument& e) {
    throw PlanError(where + ": " + e.what());
  }
  f.leaves.erase(it);
  for (auto& k : kids) f.leaves.emplace(k.id, std::move(k));
  f.divisors[id] = DivisorRecord{id, c.id, 0, 0};
}

// Fills a and b from every leaf seeing each divisor; disagreement is an
// internal consistency failure.
void fill_multiplicities(Frontier& f, const Ideal& I, const Ideal& J) {
  std::map<DivisorId, std::string> first_seen;
  for (const auto& [id, leaf] : f.leaves) {
    Ideal ti = total_transform(leaf, I), tj = total_transform(leaf, J);
    for (const auto& [d, var] : leaf.divisors) {
      unsigned a = ord_along(leaf, d, ti).value_or(0);
      unsigned b = ord_along(leaf, d, tj).value_or(0);
      auto& rec = f.divisors.at(d);
      auto seen = first_seen.find(d);
      if (seen == first_seen.end()) {
        rec.a = a;
        rec.b = b;
        first_seen.emplace(d, id);
      } else if (rec.a != a || rec.b != b) {
        throw PlanError("E" + std::to_string(d) + " has (a, b) = (" + std::to_string(rec.a) + ", " +
                        std::to_string(rec.b) + ") in chart " + seen->second + " but (" + std::to_string(a) + ", " +
                        std::to_string(b) + ") in chart " + id);
      }
    }
  }
  for (const auto& [d, rec] : f.divisors)
    if (!first_seen.count(d)) throw PlanError("E" + std::to_string(d) + " is visible in no leaf chart");
}

ResolutionTree to_tree(const Frontier& f, const Ideal& I, const Ideal& J, std::vector<PlanStep> steps) {
  return ResolutionTree{I, J, std::move(steps), f.leaves, f.divisors, std::nullopt};
}

Frontier start(const Ideal& I, const Ideal& J) {
  if (!(I.ambient() == J.ambient())) throw PlanError("I and J live over different variables");
  check_supported_at_origin(I);
  Frontier f;
  Chart root = root_chart(I.ambient());
  f.leaves.emplace(root.id, root);
  return f;
}

}  // namespace

ResolutionTree execute_plan(const Ideal& I, const Ideal& J, const std::vector<PlanStep>& plan) {
  Frontier f = start(I, J);
  for (const auto& step : plan) run_step(f, step, I);
  fill_multiplicities(f, I, J);
  return to_tree(f, I, J, plan);
}

// ---------------------------------------------------------------- heuristic

std::optional<Ideal> bad_locus(const Chart& chart, const Ideal& base_ideal) {
  auto mono = is_monomialized(chart, total_transform(chart, base_ideal));
  if (mono.monomial) return std::nullopt;
  return sum(*mono.cofactor, fiber_ideal(chart));
}

std::optional<std::string> deferral_target(const Chart& chart, const Ideal& bad) {
  // Nearest ancestors first: the deepest sibling is the smallest subtree.
  for (auto it = chart.overlaps.rbegin(); it != chart.overlaps.rend(); ++it)
    if (sum(bad, Ideal(chart.ambient, {it->second})).is_unit()) return it->first;
  return std::nullopt;
}

namespace {

bool vanishes_on(const Ideal& ideal, const std::vector<std::size_t>& s) {
  return std::all_of(ideal.generators().begin(), ideal.generators().end(),
                     [&](const Polynomial& g) { return g.restrict_to_zero(s).is_zero(); });
}

// Steps 1 and 2 of the heuristic.
std::optional<std::vector<std::size_t>> coordinate_center(const Chart& chart, const Ideal& base_ideal,
                                                          const Ideal& bad) {
  const Ambient& amb = chart.ambient;
  const std::size_t n = amb.size();
  // An intersection of two divisors lying inside the strict transform can
  // never be normal crossings; blow it up before anything else.
  auto mono = is_monomialized(chart, total_transform(chart, base_ideal));
  std::vector<std::size_t> dvars;
  for (const auto& [d, v] : chart.divisors) dvars.push_back(v);
  std::sort(dvars.begin(), dvars.end());
  for (std::size_t a = 0; a < dvars.size(); ++a)
    for (std::size_t b = a + 1; b < dvars.size(); ++b) {
      std::vector<std::size_t> s{dvars[a], dvars[b]};
      if (mono.cofactor && vanishes_on(*mono.cofactor, s) && vanishes_on(fiber_ideal(chart), s)) return s;
    }
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < n; ++i)
    if (in_radical(Polynomial::variable(amb, i), bad)) hull.push_back(i);
  if (hull.size() >= 2 && vanishes_on(total_transform(chart, base_ideal), hull) &&
      vanishes_on(fiber_ideal(chart), hull))
    return hull;
  for (std::size_t k = 2; k <= n; ++k) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
    do {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < n; ++i)
        if (pick[i]) s.push_back(i);
      if (vanishes_on(bad, s)) return s;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return std::nullopt;
}

// Candidate changes x_j -> x_j - u from lex Groebner elements of the bad
// locus whose top x_j-part is c*x_j^k, read as c*(x_j + u)^k: u is the
// x_j^(k-1) coefficient over k*c. Linear elements (k = 1) come first; higher
// k handles non-reduced loci such as (x_j + 1)^2. j is not a divisor variable.
std::vector<std::pair<std::string, Polynomial>> alignment_candidates(const Chart& chart, const Ideal& bad) {
  const Ambient& amb = chart.ambient;
  const std::size_t n = amb.size();
  std::set<std::size_t> divisor_vars;
  for (const auto& [d, v] : chart.divisors) divisor_vars.insert(v);
  std::vector<std::pair<std::string, Polynomial>> linear, higher;
  for (std::size_t j = 0; j < n; ++j) {
    if (divisor_vars.count(j)) continue;
    std::vector<std::size_t> priority{j};
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) priority.push_back(i);
    for (const auto& g : bad.basis(MonomialOrder(OrderKind::lex, priority)).elements()) {
      unsigned k = 0;
      for (const auto& t : g.terms()) k = std::max(k, t.monomial[j]);
      if (k == 0) continue;
      Rational c = 0;
      Polynomial u(amb);
      bool ok = true;
      for (const auto& t : g.terms()) {
        if (t.monomial[j] == k) {
          if (t.monomial.degree() != k) ok = false;
          c = t.coeff;
        } else if (t.monomial[j] == k - 1) {
          Monomial m = t.monomial;
          m.set(j, 0);
          u += Polynomial::monomial(amb, m, t.coeff);
        }
      }
      if (!ok || c == 0 || u.is_zero()) continue;
      Polynomial shift = (1 / (Rational(k) * c)) * u;
      (k == 1 ? linear : higher).emplace_back(amb.name(j), Polynomial::variable(amb, j) - shift);
    }
  }
  linear.insert(linear.end(), higher.begin(), higher.end());
  return linear;
}

}  // namespace

CenterChoice choose_center(const Chart& chart, const Ideal& base_ideal) {
  CenterChoice out;
  auto bad = bad_locus(chart, base_ideal);
  if (!bad) return out;
  out.locus = bad->to_string();
  if (auto c = coordinate_center(chart, base_ideal, *bad)) {
    out.kind = CenterChoice::Kind::center;
    out.center = *c;
    return out;
  }
  for (auto& change : alignment_candidates(chart, *bad)) {
    Chart moved;
    try {
      moved = apply_coordinate_change(chart, CoordinateChange::from_map(chart.ambient, {change}));
    } catch (const std::invalid_argument&) {
      continue;
    }
    auto moved_bad = bad_locus(moved, base_ideal);
    if (!moved_bad) continue;
    if (auto c = coordinate_center(moved, base_ideal, *moved_bad)) {
      out.kind = CenterChoice::Kind::center;
      out.change = {change};
      out.center = *c;
      return out;
    }
  }
  if (auto target = deferral_target(chart, *bad)) {
    out.kind = CenterChoice::Kind::deferred;
    out.defer_to = *target;
    return out;
  }
  out.kind = CenterChoice::Kind::misaligned;
  return out;
}

namespace {

bool in_subtree(const std::string& id, const std::string& root) {
  return id == root || id.rfind(root + ".", 0) == 0;
}

// Deferred leaves whose chain of deferrals reaches an unresolved leaf or
// loops. Each deferred leaf points at every leaf of its target subtree.
std::vector<std::string> broken_deferrals(const std::map<std::string, Chart>& leaves,
                                          const std::map<std::string, std::string>& deferred,
                                          const std::set<std::string>& unresolved) {
  std::map<std::string, int> state;  // 1 on stack, 2 good, 3 broken
  std::function<bool(const std::string&)> good = [&](const std::string& id) {
    if (unresolved.count(id)) return false;
    auto d = deferred.find(id);
    if (d == deferred.end()) return true;
    int& s = state[id];
    if (s == 1) return false;
    if (s >= 2) return s == 2;
    s = 1;
    bool ok = std::any_of(leaves.begin(), leaves.end(), [&](const auto& kv) { return in_subtree(kv.first, d->second); });
    for (const auto& [other, leaf] : leaves)
      if (ok && in_subtree(other, d->second)) ok = good(other);
    state[id] = ok ? 2 : 3;
    return ok;
  };
  std::vector<std::string> out;
  for (const auto& [id, target] : deferred)
    if (!good(id)) out.push_back(id);
  return out;
}

}  // namespace

ResolutionTree auto_resolve(const Ideal& I, const Ideal& J, unsigned budget, const std::vector<PlanStep>& prefix) {
  Frontier f = start(I, J);
  std::vector<PlanStep> steps;
  for (const auto& step : prefix) {
    run_step(f, step, I);
    steps.push_back(step);
  }
  std::set<std::string> done;                  // leaves known to be monomial
  std::map<std::string, std::string> deferred;  // leaf -> sibling subtree
  auto partial = [&]() {
    Frontier copy = f;
    fill_multiplicities(copy, I, J);
    return to_tree(copy, I, J, steps);
  };
  while (true) {
    std::optional<std::pair<std::string, CenterChoice>> move;
    for (const auto& [id, leaf] : f.leaves) {
      if (done.count(id) || deferred.count(id)) continue;
      CenterChoice c = choose_center(leaf, I);
      if (c.kind == CenterChoice::Kind::monomial) {
        done.insert(id);
        continue;
      }
      if (c.kind == CenterChoice::Kind::deferred) {
        deferred.emplace(id, c.defer_to);
        continue;
      }
      if (c.kind == CenterChoice::Kind::misaligned) throw NotAlignable(partial(), id, c.locus);
      move.emplace(id, std::move(c));
      break;
    }
    if (!move) break;
    if (f.blowups >= budget) {
      std::vector<std::string> frontier;
      for (const auto& [id, leaf] : f.leaves)
        if (!done.count(id)) frontier.push_back(id);
      throw BudgetExhausted(partial(), frontier);
    }
    const Chart& leaf = f.leaves.at(move->first);
    PlanStep step{move->first, move->second.change, {}};
    for (auto v : move->second.center) step.center.push_back(leaf.ambient.name(v));
    run_step(f, step, I);
    steps.push_back(std::move(step));
  }
  // A deferral only counts when the sibling's subtree is free of deferrals.
  auto broken = broken_deferrals(f.leaves, deferred, {});
  if (!broken.empty())
    throw NotAlignable(partial(), broken.front(), "deferred to " + deferred.at(broken.front()) + " without cover");
  fill_multiplicities(f, I, J);
  return to_tree(f, I, J, steps);
}

// ---------------------------------------------------------------- verifier

VerificationReport verify_log_resolution(const ResolutionTree& tree) {
  VerificationReport report;
  report.verdicts.push_back({"(i) smooth charts", true, "every chart is an affine space with coordinate centers"});

  Frontier f;
  bool replayed = false;
  try {
    f = start(tree.I, tree.J);
    for (const auto& step : tree.steps) run_step(f, step, tree.I);
    replayed = true;
    report.verdicts.push_back({"(ii) centers in V(I) over the origin", true,
                               std::to_string(f.blowups) + " centers replayed (strict mode)"});
  } catch (const PlanError& e) {
    report.verdicts.push_back({"(ii) centers in V(I) over the origin", false, e.what()});
  }
  if (!replayed) return report;

  bool snc = true;
  for (const auto& [id, leaf] : f.leaves) {
    std::set<std::size_t> vars;
    for (const auto& [d, v] : leaf.divisors) snc = vars.insert(v).second && snc;
  }
  report.verdicts.push_back({"(iii) normal crossings", snc,
                             snc ? "divisors are distinct coordinate hyperplanes" : "two divisors share an equation"});

  std::vector<std::string> bad_i, bad_j, deferred_notes;
  std::set<std::string> unresolved;
  std::map<std::string, std::string> deferred;
  for (const auto& [id, leaf] : f.leaves) {
    if (!is_monomialized(leaf, total_transform(leaf, tree.J)).monomial) bad_j.push_back(id);
    auto bad = bad_locus(leaf, tree.I);
    if (!bad) continue;
    if (auto target = deferral_target(leaf, *bad)) {
      deferred.emplace(id, *target);
    } else {
      unresolved.insert(id);
      bad_i.push_back(id);
    }
  }
  auto broken = broken_deferrals(f.leaves, deferred, unresolved);
  for (const auto& [id, target] : deferred) {
    if (std::find(broken.begin(), broken.end(), id) == broken.end()) deferred_notes.push_back(id + " -> " + target);
    else bad_i.push_back(id + " (deferred to " + target + ", not covered)");
  }
  std::string detail = std::to_string(f.leaves.size()) + " leaves";
  if (!deferred_notes.empty()) detail += "; non-monomial points covered by sibling subtrees: " + join(deferred_notes, ", ");
  report.verdicts.push_back({"(iv) I monomial over the origin", bad_i.empty(),
                             bad_i.empty() ? detail : "not monomial in " + join(bad_i, ", ")});
  if (!bad_j.empty()) report.notes.push_back("J is not monomial in " + join(bad_j, ", "));

  try {
    fill_multiplicities(f, tree.I, tree.J);
    std::vector<std::string> diffs;
    for (const auto& [d, rec] : f.divisors) {
      auto it = tree.divisors.find(d);
      if (it == tree.divisors.end()) {
        diffs.push_back("E" + std::to_string(d) + " missing");
      } else if (!(it->second == rec)) {
        diffs.push_back("E" + std::to_string(d) + " stored a=" + std::to_string(it->second.a) +
                        " b=" + std::to_string(it->second.b) + ", replay a=" + std::to_string(rec.a) +
                        " b=" + std::to_string(rec.b));
      }
    }
    for (const auto& [d, rec] : tree.divisors)
      if (!f.divisors.count(d)) diffs.push_back("E" + std::to_string(d) + " does not exist");
    for (const auto& [id, leaf] : f.leaves) {
      auto it = tree.leaves.find(id);
      if (it == tree.leaves.end() || !(it->second.pullback == leaf.pullback) || it->second.divisors != leaf.divisors)
        diffs.push_back("leaf " + id + " differs");
    }
    for (const auto& [id, leaf] : tree.leaves)
      if (!f.leaves.count(id)) diffs.push_back("leaf " + id + " does not exist");
    report.verdicts.push_back({"divisor table consistent", diffs.empty(),
                               diffs.empty() ? std::to_string(f.divisors.size()) + " divisors, chart-independent"
                                             : join(diffs, "; ")});
  } catch (const PlanError& e) {
    report.verdicts.push_back({"divisor table consistent", false, e.what()});
  }
  return report;
}

bool certify(ResolutionTree& tree) {
  tree.report = verify_log_resolution(tree);
  return tree.report->passed();
}

// ---------------------------------------------------------------- tree text

namespace {

std::string ideal_line(const Ideal& ideal) {
  std::vector<std::string> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.to_string());
  return join(gens, "; ");
}

std::vector<std::string> split(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    auto next = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos)));
    if (next == std::string::npos) return out;
    pos = next + sep.size();
  }
}

Ideal ideal_from_line(const Ambient& amb, const std::string& s) {
  std::vector<Polynomial> gens;
  for (const auto& part : split(s, ";"))
    if (!part.empty()) gens.push_back(parse_poly(part, amb));
  return Ideal(amb, std::move(gens));
}

}  // namespace

std::string write_tree(const ResolutionTree& tree) {
  std::ostringstream out;
  out << "# lojex resolution tree\n";
  out << "vars: " << join(tree.I.ambient().names(), " ") << "\n";
  out << "I: " << ideal_line(tree.I) << "\n";
  out << "J: " << ideal_line(tree.J) << "\n";
  out << "plan:\n" << format_plan(tree.steps) << "end plan\n";
  for (const auto& [id, leaf] : tree.leaves) {
    out << "leaf " << id << "\n";
    out << "parent: " << leaf.parent << "\n";
    out << "pullback: " << leaf.describe_pullback() << "\n";
    std::vector<std::string> ds;
    for (const auto& [d, v] : leaf.divisors) ds.push_back("E" + std::to_string(d) + "=" + leaf.ambient.name(v));
    out << "divisors: " << join(ds, " ") << "\n";
  }
  for (const auto& [d, rec] : tree.divisors)
    out << "E" << d << " a=" << rec.a << " b=" << rec.b << " step=" << rec.birth_step << " chart=" << rec.born_in << "\n";
  return out.str();
}

ResolutionTree read_tree(const std::string& text) {
  std::istringstream in(text);
  std::optional<Ambient> amb;
  std::optional<Ideal> I, J;
  std::string plan_text;
  std::vector<PlanStep> steps;
  std::map<std::string, Chart> leaves;
  std::map<DivisorId, DivisorRecord> divisors;
  Chart* cur = nullptr;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("tree line " + std::to_string(lineno) + ": " + msg);
  };
  auto need_amb = [&]() -> const Ambient& {
    if (!amb) fail("'vars:' must come first");
    return *amb;
  };
  bool in_plan = false;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    if (in_plan) {
      if (trim(raw) == "end plan") {
        in_plan = false;
        steps = parse_plan(plan_text, need_amb());
      } else {
        plan_text += raw + "\n";
      }
      continue;
    }
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto starts = [&](const std::string& p) { return line.rfind(p, 0) == 0; };
    try {
      if (starts("vars:")) {
        amb = Ambient(words(line.substr(5)));
      } else if (starts("I:")) {
        I = ideal_from_line(need_amb(), line.substr(2));
      } else if (starts("J:")) {
        J = ideal_from_line(need_amb(), line.substr(2));
      } else if (line == "plan:") {
        in_plan = true;
      } else if (starts("leaf ")) {
        std::string id = trim(line.substr(5));
        cur = &leaves.emplace(id, root_chart(need_amb())).first->second;
        cur->id = id;
      } else if (starts("parent:")) {
        if (!cur) fail("'parent:' outside a leaf");
        cur->parent = trim(line.substr(7));
      } else if (starts("pullback:")) {
        if (!cur) fail("'pullback:' outside a leaf");
        std::vector<std::pair<std::string, Polynomial>> images;
        for (const auto& part : split(line.substr(9), ",")) {
          auto arrow = part.find("->");
          if (arrow == std::string::npos) fail("expected '<var> -> <poly>'");
          images.emplace_back(trim(part.substr(0, arrow)), parse_poly(part.substr(arrow + 2), *amb));
        }
        cur->pullback = Substitution::from_map(*amb, *amb, images);
      } else if (starts("divisors:")) {
        if (!cur) fail("'divisors:' outside a leaf");
        for (const auto& w : words(line.substr(9))) {
          auto eq = w.find('=');
          if (w[0] != 'E' || eq == std::string::npos) fail("expected 'E<k>=<var>'");
          cur->divisors[static_cast<DivisorId>(std::stoul(w.substr(1, eq - 1)))] = amb->require(w.substr(eq + 1));
        }
      } else if (line[0] == 'E') {
        auto w = words(line);
        DivisorId d = static_cast<DivisorId>(std::stoul(w[0].substr(1)));
        DivisorRecord rec;
        for (std::size_t i = 1; i < w.size(); ++i) {
          auto eq = w[i].find('=');
          if (eq == std::string::npos) fail("expected key=value");
          std::string key = w[i].substr(0, eq), value = w[i].substr(eq + 1);
          if (key == "a") rec.a = static_cast<unsigned>(std::stoul(value));
          else if (key == "b") rec.b = static_cast<unsigned>(std::stoul(value));
          else if (key == "step") rec.birth_step = static_cast<unsigned>(std::stoul(value));
          else if (key == "chart") rec.born_in = value;
          else fail("unknown key '" + key + "'");
        }
        divisors[d] = rec;
      } else {
        fail("unrecognized line '" + line + "'");
      }
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const std::invalid_argument*>(&e) && std::string(e.what()).rfind("tree line", 0) == 0) throw;
      fail(e.what());
    }
  }
  if (in_plan) fail("missing 'end plan'");
  if (!I) fail("missing 'I:'");
  if (!J) J = Ideal::maximal(*amb);
  return ResolutionTree{*I, *J, std::move(steps), std::move(leaves), std::move(divisors), std::nullopt};
}

}  // namespace lojex
