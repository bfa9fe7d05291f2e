#include "scm/solver.hpp"

#include "scm/error.hpp"

#include <algorithm>

namespace scm {

namespace {

// Brute-force fixed points: every endogenous assignment (with `fixed` entries pinned) that
// satisfies all non-pinned equations. Enumerated in canonical order, last node fastest.
std::vector<std::vector<ValueIndex>> fixed_points(const Scm& scm, std::span<const ValueIndex> exo,
                                                  const std::vector<std::optional<ValueIndex>>& fixed) {
  const std::size_t n = scm.endo_count();
  std::vector<ValueIndex> full(scm.node_count(), 0);
  std::copy(exo.begin(), exo.end(), full.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < n; ++i) {
    if (fixed[i])
      full[i] = *fixed[i];
    else
      free.push_back(i);
  }
  std::vector<std::vector<ValueIndex>> out;
  while (true) {
    bool ok = true;
    for (std::size_t i : free)
      if (scm.evaluate(i, full) != full[i]) {
        ok = false;
        break;
      }
    if (ok)
      out.emplace_back(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(n));
    // odometer step, last free node fastest
    std::size_t k = free.size();
    while (k > 0) {
      const std::size_t i = free[k - 1];
      if (++full[i] < static_cast<ValueIndex>(scm.endogenous()[i].space.size()))
        break;
      full[i] = 0;
      --k;
    }
    if (k == 0)
      break;
  }
  return out;
}

std::vector<std::optional<ValueIndex>> pins(const Scm& scm, const InterventionSpec& spec) {
  std::vector<std::optional<ValueIndex>> fixed(scm.endo_count());
  for (const auto& [node, value] : spec.targets)
    fixed.at(node.index) = value;
  return fixed;
}

} // namespace

SolutionSet solve(const Scm& scm, std::span<const ValueIndex> exogenous) {
  SolutionSet s;
  s.exogenous.assign(exogenous.begin(), exogenous.end());
  if (scm.acyclic()) {
    std::vector<ValueIndex> full(scm.node_count(), 0);
    std::copy(exogenous.begin(), exogenous.end(), full.begin() + static_cast<std::ptrdiff_t>(scm.endo_count()));
    evaluate_acyclic(scm, full);
    s.solutions.emplace_back(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(scm.endo_count()));
    return s;
  }
  s.solutions = fixed_points(scm, exogenous, std::vector<std::optional<ValueIndex>>(scm.endo_count()));
  return s;
}

void evaluate_acyclic(const Scm& scm, std::vector<ValueIndex>& full) {
  for (std::size_t i : scm.endo_order())
    full[i] = scm.evaluate(i, full);
}

SimplicityReport is_simple(const Scm& scm, std::size_t max_subset) {
  const std::size_t n = scm.endo_count();
  const std::size_t count = scm.exo_assignment_count();
  std::vector<std::vector<ValueIndex>> support;
  for (std::size_t i = 0; i < count; ++i) {
    auto e = scm.exo_assignment(i);
    if (scm.exo_probability(e) > 0)
      support.push_back(std::move(e));
  }

  SimplicityReport report;
  // subsets by increasing size, lexicographic within a size; values in canonical order
  for (std::size_t size = 0; size <= std::min(max_subset, n); ++size) {
    std::vector<std::size_t> subset(size);
    for (std::size_t k = 0; k < size; ++k)
      subset[k] = k;
    while (true) {
      std::vector<ValueIndex> values(size, 0);
      while (true) {
        InterventionSpec spec;
        for (std::size_t k = 0; k < size; ++k)
          spec.targets.emplace_back(NodeId::endo(subset[k]), values[k]);
        const auto fixed = pins(scm, spec);
        for (const auto& e : support) {
          const auto sols = fixed_points(scm, e, fixed);
          if (sols.size() != 1) {
            report.simple = false;
            report.witness = SimplicityWitness{spec, e, sols.size()};
            return report;
          }
        }
        std::size_t k = size;
        while (k > 0) {
          if (++values[k - 1] < static_cast<ValueIndex>(scm.endogenous()[subset[k - 1]].space.size()))
            break;
          values[k - 1] = 0;
          --k;
        }
        if (k == 0)
          break;
      }
      // next combination
      std::size_t k = size;
      while (k > 0 && subset[k - 1] == n - size + k - 1)
        --k;
      if (k == 0)
        break;
      ++subset[k - 1];
      for (std::size_t j = k; j < size; ++j)
        subset[j] = subset[j - 1] + 1;
    }
  }
  return report;
}

Distribution joint_distribution(const Scm& scm, Execution exec) { return kernels::joint_sweep(scm, exec); }

nlohmann::ordered_json to_json(const InterventionSpec& spec, const Scm& scm) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [node, value] : spec.targets)
    j[scm.name(node)] = scm.space(node).token(value);
  return j;
}

nlohmann::ordered_json to_json(const SolutionSet& s, const Scm& scm) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json e = nlohmann::ordered_json::object();
  for (std::size_t k = 0; k < s.exogenous.size(); ++k)
    e[scm.exogenous()[k].name] = scm.exogenous()[k].space.token(s.exogenous[k]);
  j["exogenous"] = e;
  j["solution_count"] = s.solutions.size();
  auto sols = nlohmann::ordered_json::array();
  for (const auto& sol : s.solutions) {
    nlohmann::ordered_json a = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < sol.size(); ++k)
      a[scm.endogenous()[k].name] = scm.endogenous()[k].space.token(sol[k]);
    sols.push_back(a);
  }
  j["solutions"] = sols;
  return j;
}

nlohmann::ordered_json to_json(const SimplicityReport& r, const Scm& scm) {
  nlohmann::ordered_json j;
  j["simple"] = r.simple;
  if (r.witness) {
    nlohmann::ordered_json w;
    w["intervention"] = to_json(r.witness->intervention, scm);
    nlohmann::ordered_json e = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < r.witness->exogenous.size(); ++k)
      e[scm.exogenous()[k].name] = scm.exogenous()[k].space.token(r.witness->exogenous[k]);
    w["exogenous"] = e;
    w["solution_count"] = r.witness->solution_count;
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

} // namespace scm
