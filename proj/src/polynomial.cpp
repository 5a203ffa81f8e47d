#include "lojex/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

namespace lojex {

// ---------------------------------------------------------------- Ambient

Ambient::Ambient() : names_(std::make_shared<const std::vector<std::string>>()) {}

Ambient::Ambient(std::vector<std::string> names) {
  if (names.size() > kMaxVariables)
    throw std::invalid_argument("at most " + std::to_string(kMaxVariables) + " variables supported");
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (names[i] == names[j]) throw std::invalid_argument("duplicate variable '" + names[i] + "'");
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::optional<std::size_t> Ambient::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i)
    if ((*names_)[i] == name) return i;
  return std::nullopt;
}

std::size_t Ambient::require(std::string_view name) const {
  auto i = index_of(name);
  if (!i) throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
  return *i;
}

bool Ambient::operator==(const Ambient& other) const {
  return names_ == other.names_ || *names_ == *other.names_;
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::size_t nvars) : nvars_(static_cast<std::uint8_t>(nvars)) {
  if (nvars > kMaxVariables) throw std::invalid_argument("too many variables");
}

Monomial::Monomial(std::initializer_list<unsigned> exponents)
    : Monomial(std::span<const unsigned>(exponents.begin(), exponents.size())) {}

Monomial::Monomial(std::span<const unsigned> exponents) : Monomial(exponents.size()) {
  for (std::size_t i = 0; i < exponents.size(); ++i) set(i, exponents[i]);
}

void Monomial::set(std::size_t i, unsigned e) {
  if (e > std::numeric_limits<Exponent>::max()) throw std::overflow_error("exponent overflow");
  degree_ = degree_ - exp_[i] + e;
  exp_[i] = static_cast<Exponent>(e);
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < nvars_; ++i)
    if (exp_[i] > other.exp_[i]) return false;
  return true;
}

std::vector<unsigned> Monomial::exponents() const {
  return std::vector<unsigned>(exp_.begin(), exp_.begin() + nvars_);
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r(a.nvars_);
  for (std::size_t i = 0; i < a.nvars_; ++i) {
    unsigned e = unsigned(a.exp_[i]) + b.exp_[i];
    if (e > std::numeric_limits<Monomial::Exponent>::max())
      throw std::overflow_error("exponent overflow");
    r.exp_[i] = static_cast<Monomial::Exponent>(e);
  }
  r.degree_ = a.degree_ + b.degree_;
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r(a.nvars_);
  for (std::size_t i = 0; i < a.nvars_; ++i) r.exp_[i] = a.exp_[i] - b.exp_[i];
  r.degree_ = a.degree_ - b.degree_;
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.nvars_);
  for (std::size_t i = 0; i < a.nvars_; ++i) {
    r.exp_[i] = std::max(a.exp_[i], b.exp_[i]);
    r.degree_ += r.exp_[i];
  }
  return r;
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial r(a.nvars_);
  for (std::size_t i = 0; i < a.nvars_; ++i) {
    r.exp_[i] = std::min(a.exp_[i], b.exp_[i]);
    r.degree_ += r.exp_[i];
  }
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < nvars_; ++i) h = (h ^ exp_[i]) * 1099511628211ull;
  return h;
}

int compare_grevlex(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

int compare_lex(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

std::string to_string(const Monomial& m, const Ambient& ambient) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ambient.name(i);
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------- Polynomial

namespace {

bool grevlex_greater(const Polynomial::Term& a, const Polynomial::Term& b) {
  return compare_grevlex(a.monomial, b.monomial) > 0;
}

std::vector<Polynomial::Term> fold(std::unordered_map<Monomial, Rational, MonomialHash>&& acc) {
  std::vector<Polynomial::Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (sgn(c) != 0) out.push_back({m, std::move(c)});
  std::sort(out.begin(), out.end(), grevlex_greater);
  return out;
}

}  // namespace

Polynomial::Polynomial(Ambient ambient) : ambient_(std::move(ambient)) {}

Polynomial::Polynomial(Ambient ambient, std::vector<Term> terms) : ambient_(std::move(ambient)) {
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  for (auto& t : terms) {
    if (t.monomial.size() != ambient_.size())
      throw std::invalid_argument("monomial length does not match ambient");
    acc[t.monomial] += t.coeff;
  }
  terms_ = fold(std::move(acc));
}

Polynomial Polynomial::constant(const Ambient& ambient, const Rational& c) {
  return monomial(ambient, Monomial(ambient.size()), c);
}

Polynomial Polynomial::variable(const Ambient& ambient, std::size_t index) {
  Monomial m(ambient.size());
  m.set(index, 1);
  return monomial(ambient, m);
}

Polynomial Polynomial::variable(const Ambient& ambient, std::string_view name) {
  return variable(ambient, ambient.require(name));
}

Polynomial Polynomial::monomial(const Ambient& ambient, const Monomial& m, const Rational& c) {
  Polynomial p(ambient);
  if (sgn(c) != 0) p.terms_.push_back({m, c});
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

int Polynomial::total_degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.front().monomial.degree());
}

int Polynomial::lowest_degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.back().monomial.degree());
}

Rational Polynomial::coefficient(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.monomial == m) return t.coeff;
  return 0;
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coeff;
  return 0;
}

unsigned Polynomial::min_exponent(std::size_t i) const {
  if (terms_.empty()) return 0;
  unsigned m = std::numeric_limits<unsigned>::max();
  for (const auto& t : terms_) m = std::min(m, t.monomial[i]);
  return m;
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return Monomial(ambient_.size());
  Monomial g = terms_.front().monomial;
  for (const auto& t : terms_) g = gcd(g, t.monomial);
  return g;
}

Polynomial Polynomial::restrict_to_zero(std::span<const std::size_t> vars) const {
  Polynomial out(ambient_);
  for (const auto& t : terms_) {
    bool keep = std::none_of(vars.begin(), vars.end(), [&](std::size_t v) { return t.monomial[v] > 0; });
    if (keep) out.terms_.push_back(t);
  }
  return out;
}

void Polynomial::check_same_ambient(const Polynomial& o) const {
  if (!(ambient_ == o.ambient_)) throw std::invalid_argument("polynomials over different ambients");
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_same_ambient(o);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c = i == terms_.size()     ? -1
            : j == o.terms_.size() ? 1
                                   : compare_grevlex(terms_[i].monomial, o.terms_[j].monomial);
    if (c > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      Rational s = terms_[i].coeff + o.terms_[j].coeff;
      if (sgn(s) != 0) out.push_back({terms_[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_same_ambient(b);
  Polynomial r(a.ambient_);
  if (a.is_zero() || b.is_zero()) return r;
  if (b.terms_.size() == 1) {
    r.terms_.reserve(a.terms_.size());
    for (const auto& t : a.terms_)
      r.terms_.push_back({t.monomial * b.terms_[0].monomial, t.coeff * b.terms_[0].coeff});
    return r;  // multiplication by a monomial preserves the order
  }
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) acc[s.monomial * t.monomial] += s.coeff * t.coeff;
  r.terms_ = fold(std::move(acc));
  return r;
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
  Polynomial r(p.ambient_);
  if (sgn(c) == 0) return r;
  r.terms_ = p.terms_;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m) const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.monomial = t.monomial * m;
  return r;
}

Polynomial Polynomial::divide_by_monomial(const Monomial& m) const {
  Polynomial r = *this;
  for (auto& t : r.terms_) {
    if (!m.divides(t.monomial)) throw std::invalid_argument("monomial does not divide polynomial");
    t.monomial = t.monomial / m;
  }
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(ambient_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!(a.ambient_ == b.ambient_) || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].monomial == b.terms_[i].monomial) || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.monomial.is_one()) {
      out += lojex::to_string(c);
    } else {
      if (c != 1) out += lojex::to_string(c) + "*";
      out += lojex::to_string(t.monomial, ambient_);
    }
  }
  return out;
}

// ---------------------------------------------------------------- Parsing

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Ambient& ambient) : text_(text), ambient_(ambient) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return p;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial b = base();
    if (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      std::string digits = read_digits();
      if (digits.empty()) throw ParseError("expected natural exponent", start);
      if (digits.size() > 5) throw ParseError("exponent too large", start);
      return b.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return b;
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Polynomial base() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = read_digits();
      std::string den = "1";
      if (pos_ < text_.size() && text_[pos_] == '/') {
        std::size_t slash = pos_++;
        den = read_digits();
        if (den.empty()) throw ParseError("expected denominator", slash + 1);
        if (Integer(den) == 0) throw ParseError("zero denominator", slash + 1);
      }
      return Polynomial::constant(ambient_, make_rational(Integer(num), Integer(den)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      auto idx = ambient_.index_of(name);
      if (!idx) throw ParseError("unknown variable '" + std::string(name) + "'", start);
      return Polynomial::variable(ambient_, *idx);
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  std::string_view text_;
  const Ambient& ambient_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_poly(std::string_view text, const Ambient& ambient) {
  return Parser(text, ambient).parse();
}

// ---------------------------------------------------------------- Division

std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  if (!(f.ambient() == g.ambient())) throw std::invalid_argument("polynomials over different ambients");
  const Ambient& amb = f.ambient();
  // Multivariate division by the grevlex-leading term; exact iff the
  // remainder vanishes and no term is ever left over.
  Polynomial rest = f;
  std::vector<Polynomial::Term> quotient;
  const auto& lead = g.terms().front();
  while (!rest.is_zero()) {
    const auto& t = rest.terms().front();
    if (!lead.monomial.divides(t.monomial)) return std::nullopt;
    Polynomial::Term q{t.monomial / lead.monomial, t.coeff / lead.coeff};
    rest -= q.coeff * g.times_monomial(q.monomial);
    quotient.push_back(std::move(q));
  }
  return Polynomial(amb, std::move(quotient));
}

// ---------------------------------------------------------------- Derivative

Polynomial partial_derivative(const Polynomial& f, std::size_t var) {
  if (var >= f.ambient().size()) throw std::invalid_argument("variable index out of range");
  std::vector<Polynomial::Term> out;
  for (const auto& t : f.terms()) {
    unsigned e = t.monomial[var];
    if (e == 0) continue;
    Monomial m = t.monomial;
    m.set(var, e - 1);
    out.push_back({m, t.coeff * e});
  }
  return Polynomial(f.ambient(), std::move(out));
}

Polynomial partial_derivative(const Polynomial& f, std::string_view var) {
  return partial_derivative(f, f.ambient().require(var));
}

// ---------------------------------------------------------------- Substitution

Substitution::Substitution(Ambient source, Ambient target, std::vector<Polynomial> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.size()) throw std::invalid_argument("missing variable image");
  for (const auto& p : images_)
    if (!(p.ambient() == target_)) throw std::invalid_argument("substitution images over mismatched ambients");
}

Substitution Substitution::identity(const Ambient& ambient) {
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < ambient.size(); ++i) images.push_back(Polynomial::variable(ambient, i));
  return Substitution(ambient, ambient, std::move(images));
}

Substitution Substitution::from_map(const Ambient& source, const Ambient& target,
                                    const std::vector<std::pair<std::string, Polynomial>>& images) {
  std::vector<std::optional<Polynomial>> slots(source.size());
  for (const auto& [name, poly] : images) {
    std::size_t i = source.require(name);
    if (slots[i]) throw std::invalid_argument("variable '" + name + "' mapped twice");
    if (!(poly.ambient() == target)) throw std::invalid_argument("substitution images over mismatched ambients");
    slots[i] = poly;
  }
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) throw std::invalid_argument("missing image for variable '" + source.name(i) + "'");
    out.push_back(std::move(*slots[i]));
  }
  return Substitution(source, target, std::move(out));
}

Polynomial Substitution::apply(const Polynomial& f) const {
  if (!(f.ambient() == source_)) throw std::invalid_argument("substitution applied over the wrong ambient");
  Polynomial out(target_);
  if (f.is_zero()) return out;
  // Cache powers of images; exponents are small at desk scale.
  std::vector<std::vector<Polynomial>> powers(source_.size());
  auto power = [&](std::size_t v, unsigned e) -> const Polynomial& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Polynomial::constant(target_, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images_[v]);
    return cache[e];
  };
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  for (const auto& t : f.terms()) {
    Polynomial term = Polynomial::constant(target_, t.coeff);
    for (std::size_t v = 0; v < source_.size(); ++v)
      if (t.monomial[v] > 0) term = term * power(v, t.monomial[v]);
    for (const auto& s : term.terms()) acc[s.monomial] += s.coeff;
  }
  std::vector<Polynomial::Term> terms;
  for (auto& [m, c] : acc) terms.push_back({m, std::move(c)});
  return Polynomial(target_, std::move(terms));
}

Substitution Substitution::then(const Substitution& next) const {
  if (!(target_ == next.source_)) throw std::invalid_argument("cannot compose substitutions over mismatched ambients");
  std::vector<Polynomial> images;
  images.reserve(images_.size());
  for (const auto& p : images_) images.push_back(next.apply(p));
  return Substitution(source_, next.target_, std::move(images));
}

bool operator==(const Substitution& a, const Substitution& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.images_ == b.images_;
}

Polynomial substitute(const Polynomial& f, const Substitution& map) { return map.apply(f); }

}  // namespace lojex
