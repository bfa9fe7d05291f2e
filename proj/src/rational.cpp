#include "scm/rational.hpp"

#include "scm/error.hpp"

#include <cctype>

namespace scm {

namespace {

bool is_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+'))
    s.remove_prefix(1);
  if (s.empty())
    return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      return false;
  return true;
}

} // namespace

std::optional<Rational> try_parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  if (!is_integer_text(num))
    return std::nullopt;
  Rational r;
  if (slash == std::string_view::npos) {
    r = Rational(mpz_class(std::string(num[0] == '+' ? num.substr(1) : num)));
    return r;
  }
  const auto den = text.substr(slash + 1);
  if (!is_integer_text(den) || den.front() == '-' || den.front() == '+')
    return std::nullopt;
  mpz_class d(std::string{den});
  if (d == 0)
    return std::nullopt;
  r = Rational(mpz_class(std::string(num[0] == '+' ? num.substr(1) : num)), d);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  if (auto r = try_parse_rational(text))
    return *r;
  throw ScmError(ErrorCode::Parse, "malformed rational \"" + std::string(text) + "\" (expected p/q with q > 0)");
}

std::string format_rational(const Rational& value) {
  Rational r = value;
  r.canonicalize();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string format_numeric_token(const Rational& value) {
  Rational r = value;
  r.canonicalize();
  if (is_integer(r))
    return r.get_num().get_str();
  return format_rational(value);
}

} // namespace scm
