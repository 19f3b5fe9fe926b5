#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>

namespace w22hv {

/// Exact arbitrary-precision rational scalar. Values are kept in canonical
/// reduced form (positive denominator, coprime numerator/denominator).
/// No floating point is used anywhere in this library.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Parses "a" or "a/b" in base 10 (optional leading sign on the numerator).
/// Anything else, including a zero denominator, is rejected.
inline Rational parse_rational(const std::string& text) {
  auto bad = [&]() -> Rational {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  };
  if (text.empty()) return bad();
  size_t i = 0;
  if (text[i] == '+' || text[i] == '-') ++i;
  size_t digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    ++i;
    ++digits;
  }
  if (digits == 0) return bad();
  if (i < text.size()) {
    if (text[i] != '/') return bad();
    ++i;
    size_t den_digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      ++i;
      ++den_digits;
    }
    if (den_digits == 0 || i != text.size()) return bad();
  }
  Rational q;
  const std::string digits_only = text[0] == '+' ? text.substr(1) : text;
  if (q.set_str(digits_only, 10) != 0) return bad();
  if (q.get_den() == 0) throw std::invalid_argument("rational with zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rational& q) { return q.get_str(); }

inline Rational factorial(int n) {
  if (n < 0) throw std::domain_error("factorial of negative integer");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

}  // namespace w22hv
