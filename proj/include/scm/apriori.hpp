#pragma once

#include "scm/graph.hpp"
#include "scm/model.hpp"

#include <json.hpp>

#include <vector>

namespace scm {

struct AprioriModule {
  NodeId anchor;
  NodeSet members;
};

/// Least node set containing the anchor and, for every a-priori member, all of its parents.
/// Throws NotApriori when the anchor's mechanism is not flagged.
AprioriModule ap_module(const Scm& scm, NodeId anchor);

/// Flags of the pieces that went into one substituted mechanism.
struct CompositionPlan {
  std::vector<bool> constituents;       // a-priori flags of the composed mechanisms
  std::vector<bool> absorbed_exogenous;  // a-priori-known flags of exogenous measures pulled in
};

/// A composition is a priori only if every constituent is and every absorbed measure is known a priori.
bool propagate_apriori(const CompositionPlan& plan);

/// Substitutes the victim's mechanism into each child and drops the victim. Its parents,
/// exogenous ones included, become parents of the former children. Throws CyclicGraph when the
/// victim sits on a cycle.
Scm marginalize(const Scm& scm, NodeId victim);

struct Criterion {
  bool holds = true;
  nlohmann::ordered_json counterexample;  // null when it holds
};

struct EquivalenceReport {
  Criterion i_a;   // edges between outside nodes identical
  Criterion i_b;   // linkage through the module preserved for outside pairs
  Criterion ii_a;  // outside nodes with a child in the module
  Criterion ii_b;  // outside nodes with a parent in the module
  Criterion iii;   // solution maps agree on positive-measure exogenous assignments
  bool overall() const { return i_a.holds && i_b.holds && ii_a.holds && ii_b.holds && iii.holds; }
};

/// Throws ModelMismatch when the two models disagree on nodes, spaces or exogenous measure.
EquivalenceReport causally_equivalent(const Scm& a, const Scm& b, const NodeSet& module);

/// Reverses each listed edge in turn and rebuilds the affected mechanisms so that the result
/// reproduces the input's solutions. Throws InvalidArgument for edges that are not interior or
/// incoming for some a-priori module, CyclicGraph when a reversal closes a cycle, and
/// RemodelFailed (with the blocking exogenous assignment) when no table fits.
Scm reverse_edge_remodel(const Scm& scm, const std::vector<Edge>& edges);

nlohmann::ordered_json to_json(const AprioriModule& m, const Scm& scm);
nlohmann::ordered_json to_json(const EquivalenceReport& r);

} // namespace scm
