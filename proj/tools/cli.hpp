#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lojex/ideal.hpp"

namespace lojex::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kPrecondition = 2;
inline constexpr int kBudget = 3;
inline constexpr int kVerification = 4;

// vars: x y z / I: p; q / J: p; q / f: p, '#' comments.
struct Problem {
  Ambient vars;
  std::optional<Ideal> I;
  std::optional<Ideal> J;
  std::optional<Polynomial> f;
};

Problem parse_problem(const std::string& text);

// Runs one command; argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lojex::cli
