#include "lojex/rational.hpp"

#include <stdexcept>

namespace lojex {

Rational make_rational(long numerator, long denominator) {
  if (denominator == 0) throw std::invalid_argument("zero denominator");
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

Rational make_rational(const Integer& numerator, const Integer& denominator) {
  if (denominator == 0) throw std::invalid_argument("zero denominator");
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_mixed_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  if (sgn(value) < 0) {
    Rational neg = -value;
    if (neg < 1) return to_string(value);
    return "-(" + to_mixed_string(neg) + ")";
  }
  if (value < 1) return to_string(value);
  Integer whole = value.get_num() / value.get_den();
  Integer rest = value.get_num() - whole * value.get_den();
  return whole.get_str() + "+" + rest.get_str() + "/" + value.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  auto digits_ok = [](const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false))
    throw std::invalid_argument("not a rational: '" + text + "'");
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  return make_rational(Integer(num), Integer(den));
}

Integer floor(const Rational& value) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

}  // namespace lojex
