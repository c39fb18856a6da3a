#include "vlat/scalar.hpp"

#include <cctype>

#include "vlat/errors.hpp"

namespace vlat {

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

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  if (!is_integer_literal(s)) {
    throw ParseError("malformed rational literal: '" + std::string(whole) + "'");
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return mpz_class(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash), text);
    mpz_class den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part[0] == '-';
    if (!int_part.empty() && (int_part[0] == '-' || int_part[0] == '+')) int_part.remove_prefix(1);
    if (int_part.empty() && frac_part.empty()) {
      throw ParseError("malformed rational literal: '" + std::string(text) + "'");
    }
    mpz_class whole = int_part.empty() ? mpz_class(0) : parse_integer(int_part, text);
    mpz_class frac = frac_part.empty() ? mpz_class(0) : parse_integer(frac_part, text);
    if (!frac_part.empty() && (frac_part[0] == '-' || frac_part[0] == '+')) {
      throw ParseError("malformed rational literal: '" + std::string(text) + "'");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    Rational q(whole * scale + frac, scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  }

  return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& q) { return q.get_str(10); }

}  // namespace vlat
