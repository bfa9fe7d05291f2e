#pragma once

#include "oracle.hpp"

#include "scm/distribution.hpp"
#include "scm/document.hpp"
#include "scm/scenarios.hpp"

#include <doctest.h>

#include <string>

namespace support {

using scm::Rational;

inline Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

/// P(node = token) in a distribution over the model's nodes.
inline Rational prob(const scm::Distribution& d, const scm::Scm& m, const std::string& node, const std::string& token) {
  const scm::NodeId n = m.id(node);
  return d.probability(scm::Event::equals(n, m.value_index(n, token)));
}

/// Predicate on oracle assignments.
inline std::function<bool(const oracle::Full&)> is(const scm::Scm& m, const std::string& node, const std::string& token) {
  const scm::NodeId n = m.id(node);
  const std::size_t pos = m.flat(n);
  const int v = m.value_index(n, token);
  return [pos, v](const oracle::Full& f) { return f[pos] == v; };
}

inline bool same_as_oracle(const scm::Distribution& d, const oracle::Joint& o) {
  if (d.support().size() != o.size())
    return false;
  for (const auto& [values, p] : d.support()) {
    oracle::Full key(values.begin(), values.end());
    auto it = o.find(key);
    if (it == o.end() || it->second != p)
      return false;
  }
  return true;
}

inline scm::Scm doc(const char* json) { return scm::build_scm(scm::parse_json_text(json)); }

} // namespace support
