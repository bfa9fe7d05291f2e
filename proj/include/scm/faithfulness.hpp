#pragma once

#include "scm/distribution.hpp"
#include "scm/graph.hpp"
#include "scm/kernels.hpp"
#include "scm/model.hpp"

#include <json.hpp>

#include <vector>

namespace scm {

struct Triple {
  NodeSet a;
  NodeSet b;
  NodeSet c;
};

struct AuditOptions {
  std::size_t max_ab = 2;  // size cap for A and B
  std::size_t max_c = 3;   // size cap for the conditioning set
  bool exhaustive = false;
  Execution exec = Execution::Parallel;
};

/// Unordered pairs of disjoint endogenous sets A, B with a disjoint conditioning set C, in a
/// fixed canonical order (smaller sets first, then lexicographic).
std::vector<Triple> enumerate_triples(const Scm& scm, const AuditOptions& opts);

/// Triples where A ⟂ B | C holds in the joint yet the graph d-connects them. Empty means faithful
/// within the enumerated triples. Throws CyclicGraph.
std::vector<Triple> faithfulness_audit(const Scm& scm, const AuditOptions& opts = {});

/// Triples where the graph d-separates A and B given C yet the joint says dependent.
/// Always empty for a correct acyclic model.
std::vector<Triple> markov_violations(const Scm& scm, const AuditOptions& opts = {});

nlohmann::ordered_json to_json(const std::vector<Triple>& triples, const Scm& scm);

} // namespace scm
