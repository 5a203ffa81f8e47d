#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lojex/rational.hpp"

namespace lojex {

inline constexpr std::size_t kMaxVariables = 12;

// Ordered list of variable names shared by polynomials over the same ring.
// Two ambients are equal when their name lists are equal.
class Ambient {
 public:
  Ambient();
  explicit Ambient(std::vector<std::string> names);

  std::size_t size() const { return names_->size(); }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  // Throws std::invalid_argument for unknown names.
  std::size_t require(std::string_view name) const;

  bool operator==(const Ambient& other) const;

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars);
  Monomial(std::initializer_list<unsigned> exponents);
  explicit Monomial(std::span<const unsigned> exponents);

  std::size_t size() const { return nvars_; }
  unsigned operator[](std::size_t i) const { return exp_[i]; }
  unsigned degree() const { return degree_; }
  void set(std::size_t i, unsigned e);

  bool divides(const Monomial& other) const;
  bool is_one() const { return degree_ == 0; }
  std::vector<unsigned> exponents() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  // Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend Monomial gcd(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.nvars_ == b.nvars_ && a.exp_ == b.exp_;
  }

  std::size_t hash() const;

 private:
  std::array<Exponent, kMaxVariables> exp_{};
  std::uint8_t nvars_ = 0;
  std::uint32_t degree_ = 0;
};

// Negative, zero, positive like strcmp.
int compare_grevlex(const Monomial& a, const Monomial& b);
int compare_lex(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

class Polynomial {
 public:
  struct Term {
    Monomial monomial;
    Rational coeff;
  };

  Polynomial() = default;
  explicit Polynomial(Ambient ambient);
  // Terms may repeat monomials or carry zero coefficients; both are folded.
  Polynomial(Ambient ambient, std::vector<Term> terms);

  static Polynomial constant(const Ambient& ambient, const Rational& c);
  static Polynomial variable(const Ambient& ambient, std::size_t index);
  static Polynomial variable(const Ambient& ambient, std::string_view name);
  static Polynomial monomial(const Ambient& ambient, const Monomial& m,
                             const Rational& c = 1);

  const Ambient& ambient() const { return ambient_; }
  // Sorted by descending graded reverse lexicographic order.
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  int total_degree() const;  // -1 for zero
  // Smallest total degree of a term (order of vanishing at the origin).
  int lowest_degree() const;  // -1 for zero
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const;
  // Smallest exponent of variable i over all terms; 0 for the zero polynomial.
  unsigned min_exponent(std::size_t i) const;
  // Largest monomial dividing every term.
  Monomial monomial_content() const;
  // Set every variable in `vars` to zero.
  Polynomial restrict_to_zero(std::span<const std::size_t> vars) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, const Polynomial& p);
  Polynomial times_monomial(const Monomial& m) const;
  // Requires m to divide every term.
  Polynomial divide_by_monomial(const Monomial& m) const;
  Polynomial pow(unsigned e) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

 private:
  void check_same_ambient(const Polynomial& o) const;

  Ambient ambient_;
  std::vector<Term> terms_;
};

std::string to_string(const Monomial& m, const Ambient& ambient);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Grammar: expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
// factor := base ('^' nat)?; base := var | rational | '(' expr ')'.
// A leading sign is accepted on an expression.
Polynomial parse_poly(std::string_view text, const Ambient& ambient);

// h with f = g*h, or nullopt. Throws std::invalid_argument when g = 0.
std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g);

Polynomial partial_derivative(const Polynomial& f, std::size_t var);
Polynomial partial_derivative(const Polynomial& f, std::string_view var);

// Ring map sending the i-th source variable to images[i].
class Substitution {
 public:
  Substitution() = default;
  Substitution(Ambient source, Ambient target, std::vector<Polynomial> images);

  static Substitution identity(const Ambient& ambient);
  // Every source variable needs an image and all images must live over
  // `target`; throws std::invalid_argument otherwise.
  static Substitution from_map(const Ambient& source, const Ambient& target,
                               const std::vector<std::pair<std::string, Polynomial>>& images);

  const Ambient& source() const { return source_; }
  const Ambient& target() const { return target_; }
  const Polynomial& image(std::size_t i) const { return images_[i]; }
  const std::vector<Polynomial>& images() const { return images_; }

  Polynomial apply(const Polynomial& f) const;
  // (this then next): x -> next.apply(this->image(x)).
  Substitution then(const Substitution& next) const;

  friend bool operator==(const Substitution& a, const Substitution& b);

 private:
  Ambient source_;
  Ambient target_;
  std::vector<Polynomial> images_;
};

Polynomial substitute(const Polynomial& f, const Substitution& map);

}  // namespace lojex
