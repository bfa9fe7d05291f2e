#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace scm {

/// Exact probability / arithmetic value. Backed by GMP.
using Rational = mpq_class;

/// Parses "p/q" (q > 0) or a plain integer "p". Returns nullopt on anything else.
std::optional<Rational> try_parse_rational(std::string_view text);

/// Throws ScmError(ErrorCode::Parse) on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form in lowest terms, always with an explicit denominator.
std::string format_rational(const Rational& value);

/// Integer form when the value is integral ("3", "-1"), else "p/q".
std::string format_numeric_token(const Rational& value);

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

} // namespace scm
