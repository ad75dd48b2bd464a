#include "nilcycle/series/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace nilcycle {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string strip_plus(std::string_view s) {
  return std::string(!s.empty() && s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num)) {
    throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'");
  }
  Integer p(strip_plus(num));
  Integer q(1);
  if (slash != std::string_view::npos) {
    const std::string_view den = text.substr(slash + 1);
    if (!is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
      throw std::invalid_argument("bad denominator in '" + std::string(text) + "'");
    }
    q = Integer(std::string(den));
    if (q == 0) {
      throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
  }
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Rational parse_decimal(std::string_view text) {
  if (text.find_first_of(".eE") == std::string_view::npos) return parse_rational(text);
  std::string_view mantissa = text;
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    const std::string_view exp_text = text.substr(e + 1);
    if (!is_integer_literal(exp_text)) {
      throw std::invalid_argument("bad exponent in '" + std::string(text) + "'");
    }
    exponent = std::stol(strip_plus(exp_text));
    mantissa = text.substr(0, e);
  }
  std::string digits;
  std::size_t i = 0;
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    i = 1;
  }
  bool seen_point = false;
  for (; i < mantissa.size(); ++i) {
    const char c = mantissa[i];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      if (seen_point) --exponent;
    } else {
      throw std::invalid_argument("not a decimal literal: '" + std::string(text) + "'");
    }
  }
  if (digits.empty() || std::labs(exponent) > 4000) {
    throw std::invalid_argument("not a decimal literal: '" + std::string(text) + "'");
  }
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational r(Integer(digits), 1);
  r = exponent >= 0 ? Rational(r * scale) : Rational(r / scale);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

double to_double(const Rational& value) { return value.get_d(); }

int sign(const Rational& value) { return sgn(value); }

Rational pow(const Rational& base, unsigned exponent) {
  Integer num;
  Integer den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool exact_root(const Rational& value, unsigned k, Rational& root) {
  if (sgn(value) <= 0 || k == 0) return false;
  Integer num;
  Integer den;
  if (mpz_root(num.get_mpz_t(), value.get_num_mpz_t(), k) == 0) return false;
  if (mpz_root(den.get_mpz_t(), value.get_den_mpz_t(), k) == 0) return false;
  root = Rational(num, den);
  root.canonicalize();
  return true;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("non-finite value cannot be made exact");
  }
  Rational r;
  mpq_set_d(r.get_mpq_t(), value);
  return r;
}

}  // namespace nilcycle
