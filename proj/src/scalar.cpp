#include "sphfam/scalar.hpp"

#include <cctype>

namespace sphfam {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("malformed number '" + std::string(whole) + "'");
  mpz_class z(std::string(s), 10);
  return neg ? mpz_class(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const mpz_class num = parse_integer(text.substr(0, slash), text);
  const std::string_view den_text = text.substr(slash + 1);
  if (!all_digits(den_text)) throw ParseError("malformed denominator in '" + std::string(text) + "'");
  const mpz_class den(std::string(den_text), 10);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

QScalar parse_qscalar(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  std::string_view s = compact;
  if (s.empty()) throw ParseError("empty scalar");

  constexpr std::string_view kRadical = "*r5";
  if (s.size() < kRadical.size() || s.substr(s.size() - kRadical.size()) != kRadical)
    return QScalar(parse_rational(s));

  s.remove_suffix(kRadical.size());
  std::size_t split = std::string_view::npos;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '+' || s[i] == '-') split = i;
  }
  if (split == std::string_view::npos) return QScalar(Rational(0), parse_rational(s));
  std::string_view radical = s.substr(split);
  if (radical[0] == '+') radical.remove_prefix(1);
  return QScalar(parse_rational(s.substr(0, split)), parse_rational(radical));
}

}  // namespace sphfam
