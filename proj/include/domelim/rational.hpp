#pragma once

#include <gmpxx.h>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

namespace domelim {

// Exact fraction. mpq_class keeps values canonical (reduced, positive
// denominator) as long as every construction from a numerator/denominator
// pair goes through make_rational().
using Rational = mpq_class;

inline Rational make_rational(long numerator, long denominator = 1) {
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

// Accepts `-?[0-9]+(/[0-9]+)?`. Returns nullopt on any other text and on a
// zero denominator.
inline std::optional<Rational> parse_rational(std::string_view text) {
  std::size_t pos = 0;
  if (pos < text.size() && text[pos] == '-') ++pos;
  const std::size_t num_begin = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == num_begin) return std::nullopt;
  std::string numerator(text.substr(0, pos));
  std::string denominator = "1";
  if (pos < text.size()) {
    if (text[pos] != '/') return std::nullopt;
    ++pos;
    const std::size_t den_begin = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == den_begin || pos != text.size()) return std::nullopt;
    denominator = std::string(text.substr(den_begin));
  }
  mpz_class num(numerator, 10);
  mpz_class den(denominator, 10);
  if (den == 0) return std::nullopt;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// "p/q", or "p" when q = 1.
inline std::string to_string(const Rational& q) { return q.get_str(10); }

}  // namespace domelim
