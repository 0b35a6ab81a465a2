#include "spanorm/rational.hpp"

#include <cctype>

#include "spanorm/error.hpp"

namespace spanorm {

Rational parse_rational(const std::string& text) {
  auto bad = [&]() -> Rational { fail(ErrorCode::Parse, "not a rational number: '" + text + "'"); };
  if (text.empty()) return bad();
  if (auto slash = text.find('/'); slash != std::string::npos) {
    Rational q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0) return bad();
    q.canonicalize();
    return q;
  }
  std::string s = text;
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    try {
      std::size_t used = 0;
      exp10 = std::stol(s.substr(e + 1), &used);
      if (used != s.size() - e - 1) return bad();
    } catch (...) {
      return bad();
    }
    s = s.substr(0, e);
  }
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  std::string digits;
  long frac = 0;
  bool seen_dot = false;
  for (char c : s) {
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac;
    } else {
      return bad();
    }
  }
  if (digits.empty()) return bad();
  mpz_class num(digits, 10);
  mpz_class den = 1;
  long shift = exp10 - frac;
  mpz_class ten = 10;
  mpz_class scale;
  mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift >= 0) num *= scale; else den = scale;
  Rational q(num, den);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace spanorm
