#pragma once

#include "scm/node.hpp"

#include <map>
#include <set>
#include <utility>
#include <vector>

namespace scm {

using NodeSet = std::set<NodeId>;
using Edge = std::pair<NodeId, NodeId>;
using EdgeSet = std::set<Edge>;

/// Directed graph over NodeIds. No self-loops; both endpoints of an edge must be nodes.
class CausalGraph {
public:
  CausalGraph() = default;

  void add_node(NodeId n);
  /// Throws ScmError(InvalidArgument) on self-loops or unknown endpoints.
  void add_edge(NodeId from, NodeId to);
  void remove_edge(NodeId from, NodeId to);
  /// Removes the node together with every incident edge.
  void remove_node(NodeId n);

  bool contains(NodeId n) const { return nodes_.contains(n); }
  bool has_edge(NodeId from, NodeId to) const { return edges_.contains({from, to}); }

  const NodeSet& nodes() const { return nodes_; }
  const EdgeSet& edges() const { return edges_; }

  bool operator==(const CausalGraph&) const = default;

private:
  NodeSet nodes_;
  EdgeSet edges_;
};

NodeSet parents(const CausalGraph& g, NodeId n);
NodeSet children(const CausalGraph& g, NodeId n);

/// Irreflexive transitive closures: a node is never its own ancestor unless it sits on a cycle.
NodeSet ancestors(const CausalGraph& g, const NodeSet& s);
NodeSet descendants(const CausalGraph& g, const NodeSet& s);

struct TopologicalOrder {
  bool acyclic = false;
  std::vector<NodeId> order;  // empty when cyclic
};

/// Kahn's algorithm, ties broken by smallest NodeId so the order is deterministic.
TopologicalOrder topological_order(const CausalGraph& g);
inline bool is_acyclic(const CausalGraph& g) { return topological_order(g).acyclic; }

/// Pearl's blocking criterion. Requires an acyclic graph and pairwise disjoint sets.
bool d_separated(const CausalGraph& g, const NodeSet& a, const NodeSet& b, const NodeSet& c);

struct EdgeClassification {
  EdgeSet interior;
  EdgeSet exterior;
  EdgeSet incoming;
  EdgeSet outgoing;
};

EdgeClassification classify_edges(const CausalGraph& g, const NodeSet& module);

} // namespace scm
