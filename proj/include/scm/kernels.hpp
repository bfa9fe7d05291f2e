#pragma once

// Data-parallel sweeps. Each kernel has a serial reference path and an OpenMP path that must
// agree exactly; results are merged by exact rational addition or by taking the smallest witness.

#include "scm/distribution.hpp"
#include "scm/model.hpp"

#include <cstddef>
#include <functional>
#include <optional>

namespace scm {

enum class Execution { Serial, Parallel };

namespace kernels {

/// Joint over all nodes (endogenous, then exogenous) from the unique solution of every
/// positive-measure exogenous assignment. Throws NonUniqueSolution / NoSolution for the
/// smallest offending assignment index.
Distribution joint_sweep(const Scm& scm, Execution exec);

/// Calls `probe(i)` for i in [0, count) and returns the smallest i for which it returned true.
/// `probe` must be safe to call concurrently.
std::optional<std::size_t> first_match(std::size_t count, const std::function<bool(std::size_t)>& probe,
                                       Execution exec);

int max_threads();

} // namespace kernels
} // namespace scm
