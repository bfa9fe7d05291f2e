#pragma once

// Brute-force reference used by the tests. It reads raw tables and measures only and never
// calls the solver, the kernels or do_transform: every endogenous assignment is checked
// against every equation for every exogenous assignment.

#include "scm/model.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace oracle {

using scm::Rational;
using Full = std::vector<int>;  // endogenous values, then exogenous values
using Joint = std::map<Full, Rational>;

inline bool step(std::vector<int>& digits, const std::vector<std::size_t>& radix) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (++digits[k] < static_cast<int>(radix[k]))
      return true;
    digits[k] = 0;
  }
  return false;
}

inline int apply(const scm::MechanismTable& m, const scm::Scm& s, const Full& full) {
  std::size_t row = 0;
  for (std::size_t k = 0; k < m.parents.size(); ++k) {
    const scm::NodeId p = m.parents[k];
    const std::size_t pos = p.is_endogenous() ? p.index : s.endo_count() + p.index;
    const std::size_t size = p.is_endogenous() ? s.endogenous()[p.index].space.size()
                                               : s.exogenous()[p.index].space.size();
    row = row * size + static_cast<std::size_t>(full[pos]);
  }
  return m.rows.at(row);
}

/// All endogenous fixed points for one exogenous assignment; `fixed` pins intervened nodes.
inline std::vector<std::vector<int>> solutions(const scm::Scm& s, const std::vector<int>& exo,
                                               const std::map<std::size_t, int>& fixed = {}) {
  const std::size_t n = s.endo_count();
  std::vector<std::size_t> radix;
  for (const auto& d : s.endogenous())
    radix.push_back(d.space.size());
  std::vector<int> endo(n, 0);
  std::vector<std::vector<int>> out;
  do {
    Full full = endo;
    full.insert(full.end(), exo.begin(), exo.end());
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (auto it = fixed.find(i); it != fixed.end())
        ok = endo[i] == it->second;
      else
        ok = apply(s.mechanism(i), s, full) == endo[i];
    }
    if (ok)
      out.push_back(endo);
  } while (n > 0 && step(endo, radix));
  return out;
}

inline void for_each_exo(const scm::Scm& s, const std::function<void(const std::vector<int>&, const Rational&)>& f) {
  std::vector<std::size_t> radix;
  for (const auto& d : s.exogenous())
    radix.push_back(d.space.size());
  std::vector<int> exo(radix.size(), 0);
  do {
    Rational p = 1;
    for (std::size_t j = 0; j < exo.size(); ++j)
      p *= s.measure().per_node[j][static_cast<std::size_t>(exo[j])];
    f(exo, p);
  } while (!exo.empty() && step(exo, radix));
}

/// Joint over all nodes under an optional intervention. Throws when some positive-measure
/// assignment lacks a unique solution.
inline Joint joint(const scm::Scm& s, const std::map<std::size_t, int>& fixed = {}) {
  Joint j;
  for_each_exo(s, [&](const std::vector<int>& exo, const Rational& p) {
    if (p == 0)
      return;
    const auto sols = solutions(s, exo, fixed);
    if (sols.size() != 1)
      throw std::runtime_error("oracle: no unique solution");
    Full full = sols[0];
    full.insert(full.end(), exo.begin(), exo.end());
    j[full] += p;
  });
  return j;
}

inline Rational probability(const Joint& j, const std::function<bool(const Full&)>& event) {
  Rational p = 0;
  for (const auto& [full, q] : j)
    if (event(full))
      p += q;
  return p;
}

inline Rational conditional(const Joint& j, const std::function<bool(const Full&)>& event,
                            const std::function<bool(const Full&)>& given) {
  const Rational pg = probability(j, given);
  if (pg == 0)
    throw std::runtime_error("oracle: conditioning on a null event");
  return probability(j, [&](const Full& f) { return event(f) && given(f); }) / pg;
}

} // namespace oracle
