#pragma once

#include "scm/graph.hpp"
#include "scm/model.hpp"
#include "scm/rational.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <set>
#include <span>
#include <string_view>
#include <vector>

namespace scm {

/// Read-only view of one assignment over a distribution's node list.
struct AssignmentView {
  std::span<const NodeId> nodes;
  std::span<const ValueIndex> values;

  /// Throws ScmError(UnknownNode) when the node is not part of the view.
  ValueIndex operator[](NodeId n) const;
};

using Predicate = std::function<bool(const AssignmentView&)>;

/// Conjunction of membership clauses, e.g. Z ∈ {≤3} ∧ X ∈ {1, 3}.
struct Event {
  std::vector<std::pair<NodeId, std::set<ValueIndex>>> clauses;

  static Event equals(NodeId n, ValueIndex v) { return Event{{{n, {v}}}}; }
  static Event always() { return Event{}; }

  bool holds(const AssignmentView& a) const;
  NodeSet nodes() const;
  Predicate predicate() const {
    return [e = *this](const AssignmentView& a) { return e.holds(a); };
  }
};

/// Parses "Z=≤3", "X=1|3,Y=odd" (comma = and, bar = set membership).
Event parse_event(const Scm& scm, std::string_view text);

/// Exact probability mapping over assignments to a fixed node list. Only positive entries are stored.
class Distribution {
public:
  using Support = std::map<std::vector<ValueIndex>, Rational>;

  Distribution() = default;
  explicit Distribution(std::vector<NodeId> nodes) : nodes_(std::move(nodes)) {}

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const Support& support() const { return support_; }

  void add(const std::vector<ValueIndex>& values, const Rational& p);
  Rational total() const;
  Rational probability(const Predicate& event) const;
  Rational probability(const Event& event) const { return probability(event.predicate()); }

  bool operator==(const Distribution&) const = default;

private:
  std::vector<NodeId> nodes_;
  Support support_;
};

/// Marginal over `nodes` (kept in NodeId order). Every node must belong to the distribution.
Distribution marginal(const Distribution& dist, const NodeSet& nodes);

/// P(event | given). Throws ScmError(ConditionOnNull) when P(given) = 0.
Rational conditional(const Distribution& dist, const Predicate& event, const Predicate& given);
inline Rational conditional(const Distribution& dist, const Event& event, const Event& given) {
  return conditional(dist, event.predicate(), given.predicate());
}

/// P(A ∩ B) ≠ P(A)·P(B). Events must constrain disjoint node sets.
bool dependent(const Distribution& dist, const Event& a, const Event& b);

/// Exact factorisation test of A ⟂ B | C. Sets must be pairwise disjoint.
bool cond_independent(const Distribution& dist, const NodeSet& a, const NodeSet& b, const NodeSet& c);

/// Restriction to `keep`, renormalised. Throws ScmError(FilterToNull) when P(keep) = 0.
Distribution selection_filter(const Distribution& dist, const Predicate& keep);

/// Σ weight_k · dist_k over identical node lists.
Distribution mixture(const std::vector<std::pair<Rational, Distribution>>& parts);

/// "X=1,Y=odd" style key for one assignment.
std::string assignment_key(const Scm& scm, std::span<const NodeId> nodes, std::span<const ValueIndex> values);

/// Canonical JSON: assignments in canonical value order, probabilities as "p/q".
nlohmann::ordered_json to_json(const Distribution& dist, const Scm& scm);

} // namespace scm
