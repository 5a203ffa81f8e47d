#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lojex/blowup.hpp"
#include "lojex/ideal.hpp"

namespace lojex {

// One plan step: select a leaf chart, optionally change its coordinates,
// then optionally blow up a coordinate center. At least one of the two.
struct PlanStep {
  std::string chart;
  std::vector<std::pair<std::string, Polynomial>> change;
  std::vector<std::string> center;

  friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

// Line format:
//   chart <id>
//   change <var> -> <poly>
//   center <var> <var> [...]
// Steps are separated by blank lines; '#' starts a comment.
std::vector<PlanStep> parse_plan(const std::string& text, const Ambient& ambient);
std::string format_plan(const std::vector<PlanStep>& plan);

struct DivisorRecord {
  unsigned birth_step = 0;  // index of the blow-up that created it (1-based)
  std::string born_in;      // chart that was blown up
  unsigned a = 0;           // multiplicity of I
  unsigned b = 0;           // multiplicity of J

  friend bool operator==(const DivisorRecord&, const DivisorRecord&) = default;
};

struct Verdict {
  std::string condition;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;  // informational, never fail the report

  bool passed() const;
  std::string to_string() const;
};

struct ResolutionTree {
  Ideal I;
  Ideal J;
  std::vector<PlanStep> steps;
  std::map<std::string, Chart> leaves;
  std::map<DivisorId, DivisorRecord> divisors;
  // Set by certify(); operations that need a log-resolution check it.
  std::optional<VerificationReport> report;

  bool verified() const { return report && report->passed(); }
};

// Precondition or consistency failure while running a plan.
class PlanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Replays `plan` from the root chart. Throws PlanError on a dead chart
// selector, a center outside the zero set of the total transform of I or
// away from the fiber over the origin, a coordinate change breaking a
// divisor, a cross-chart multiplicity disagreement, or when I is not
// supported at the origin.
ResolutionTree execute_plan(const Ideal& I, const Ideal& J, const std::vector<PlanStep>& plan);

class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted(ResolutionTree partial, std::vector<std::string> frontier);
  const ResolutionTree& partial() const { return partial_; }
  const std::vector<std::string>& frontier() const { return frontier_; }

 private:
  ResolutionTree partial_;
  std::vector<std::string> frontier_;
};

class NotAlignable : public std::runtime_error {
 public:
  NotAlignable(ResolutionTree partial, std::string chart, std::string locus);
  const ResolutionTree& partial() const { return partial_; }
  const std::string& chart() const { return chart_; }

 private:
  ResolutionTree partial_;
  std::string chart_;
};

// Greedy blow-ups until I is monomialized in every leaf. `start` lets a
// hand-written prefix (e.g. coordinate changes) run first.
ResolutionTree auto_resolve(const Ideal& I, const Ideal& J, unsigned budget = 32,
                            const std::vector<PlanStep>& start = {});

// Where I fails to be monomial over the origin in `chart`: cofactor ideal
// plus fiber ideal. nullopt when I is monomial there.
std::optional<Ideal> bad_locus(const Chart& chart, const Ideal& base_ideal);

// Sibling chart (same blow-up) whose overlap with `chart` contains V(bad).
// Valuations centered there are covered by the sibling's subtree.
std::optional<std::string> deferral_target(const Chart& chart, const Ideal& bad);

struct CenterChoice {
  enum class Kind { monomial, center, deferred, misaligned };
  Kind kind = Kind::monomial;
  std::vector<std::pair<std::string, Polynomial>> change;  // applied before the center
  std::vector<std::size_t> center;
  std::string defer_to;
  std::string locus;  // the bad locus ideal, for reports
};

// The heuristic's move in one chart. With B the bad locus:
//  0. an intersection of two divisors contained in the strict transform;
//  1. the smallest coordinate subspace containing V(B), if it has
//     codimension >= 2 and lies in V(total transform) over the origin;
//  2. else the largest coordinate subspace inside V(B), lexicographically
//     first;
//  3. else one triangular change x_j -> x_j - h/c read off a lex Groebner
//     element c*x_j + h of B, followed by 1 or 2;
//  4. else deferral to a sibling;
//  5. else misaligned.
CenterChoice choose_center(const Chart& chart, const Ideal& base_ideal);

VerificationReport verify_log_resolution(const ResolutionTree& tree);
// Attaches the report; returns whether it passed.
bool certify(ResolutionTree& tree);

std::string write_tree(const ResolutionTree& tree);
// Reads the stored tree verbatim (no replay); verify_log_resolution then
// compares it against a fresh replay.
ResolutionTree read_tree(const std::string& text);

}  // namespace lojex
