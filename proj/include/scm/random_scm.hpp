#pragma once

#include "scm/model.hpp"

#include <cstdint>

namespace scm {

struct RandomScmOptions {
  std::size_t max_endogenous = 5;
  std::size_t max_space = 3;
};

/// Acyclic model with one private noise node per endogenous node, parents drawn from earlier
/// nodes, strictly positive noise measures and non-constant tables. Same seed, same model.
Scm random_scm(std::uint64_t seed, const RandomScmOptions& opts = {});

} // namespace scm
