#pragma once

#include "scm/distribution.hpp"
#include "scm/intervention_spec.hpp"
#include "scm/kernels.hpp"
#include "scm/model.hpp"

#include <json.hpp>

#include <optional>
#include <span>
#include <vector>

namespace scm {

struct SolutionSet {
  std::vector<ValueIndex> exogenous;
  std::vector<std::vector<ValueIndex>> solutions;  // endogenous assignments, canonical order
};

/// Acyclic models are evaluated in topological order; cyclic ones by enumerating the
/// endogenous product space. Empty or multiple solutions are legal results.
SolutionSet solve(const Scm& scm, std::span<const ValueIndex> exogenous);

/// Same, writing endogenous values into `full` (size node_count, exogenous part pre-filled).
/// Only valid for acyclic models.
void evaluate_acyclic(const Scm& scm, std::vector<ValueIndex>& full);

struct SimplicityWitness {
  InterventionSpec intervention;
  std::vector<ValueIndex> exogenous;
  std::size_t solution_count = 0;
};

struct SimplicityReport {
  bool simple = true;
  std::optional<SimplicityWitness> witness;  // first failing (subset, values, e)
};

/// Checks unique solvability for every intervention on at most `max_subset` endogenous nodes
/// and every positive-measure exogenous assignment.
SimplicityReport is_simple(const Scm& scm, std::size_t max_subset);

/// Joint over every node. Throws NonUniqueSolution or NoSolution.
Distribution joint_distribution(const Scm& scm, Execution exec = Execution::Parallel);

nlohmann::ordered_json to_json(const SolutionSet& s, const Scm& scm);
nlohmann::ordered_json to_json(const SimplicityReport& r, const Scm& scm);
nlohmann::ordered_json to_json(const InterventionSpec& spec, const Scm& scm);

} // namespace scm
