#include "scm/graph.hpp"

#include "scm/error.hpp"

#include <algorithm>
#include <deque>
#include <queue>

namespace scm {

namespace {

void require_node(const CausalGraph& g, NodeId n) {
  if (!g.contains(n))
    throw ScmError(ErrorCode::UnknownNode, "node is not part of the graph");
}

NodeSet closure(const CausalGraph& g, const NodeSet& start, bool forward) {
  NodeSet seen;
  std::deque<NodeId> frontier;
  for (NodeId s : start) {
    require_node(g, s);
    frontier.push_back(s);
  }
  while (!frontier.empty()) {
    const NodeId n = frontier.front();
    frontier.pop_front();
    for (NodeId next : forward ? children(g, n) : parents(g, n)) {
      if (seen.insert(next).second)
        frontier.push_back(next);
    }
  }
  return seen;
}

} // namespace

void CausalGraph::add_node(NodeId n) { nodes_.insert(n); }

void CausalGraph::add_edge(NodeId from, NodeId to) {
  if (from == to)
    throw ScmError(ErrorCode::InvalidArgument, "self-loops are not allowed");
  if (!contains(from) || !contains(to))
    throw ScmError(ErrorCode::UnknownNode, "edge endpoint is not part of the graph");
  edges_.insert({from, to});
}

void CausalGraph::remove_edge(NodeId from, NodeId to) { edges_.erase({from, to}); }

void CausalGraph::remove_node(NodeId n) {
  nodes_.erase(n);
  std::erase_if(edges_, [n](const Edge& e) { return e.first == n || e.second == n; });
}

NodeSet parents(const CausalGraph& g, NodeId n) {
  require_node(g, n);
  NodeSet out;
  for (const auto& [from, to] : g.edges())
    if (to == n)
      out.insert(from);
  return out;
}

NodeSet children(const CausalGraph& g, NodeId n) {
  require_node(g, n);
  NodeSet out;
  for (const auto& [from, to] : g.edges())
    if (from == n)
      out.insert(to);
  return out;
}

NodeSet ancestors(const CausalGraph& g, const NodeSet& s) { return closure(g, s, false); }
NodeSet descendants(const CausalGraph& g, const NodeSet& s) { return closure(g, s, true); }

TopologicalOrder topological_order(const CausalGraph& g) {
  std::map<NodeId, std::size_t> indegree;
  for (NodeId n : g.nodes())
    indegree[n] = 0;
  for (const auto& e : g.edges())
    ++indegree[e.second];

  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (const auto& [n, d] : indegree)
    if (d == 0)
      ready.push(n);

  TopologicalOrder result;
  while (!ready.empty()) {
    const NodeId n = ready.top();
    ready.pop();
    result.order.push_back(n);
    for (const auto& [from, to] : g.edges()) {
      if (from == n && --indegree[to] == 0)
        ready.push(to);
    }
  }
  result.acyclic = result.order.size() == g.nodes().size();
  if (!result.acyclic)
    result.order.clear();
  return result;
}

bool d_separated(const CausalGraph& g, const NodeSet& a, const NodeSet& b, const NodeSet& c) {
  for (const NodeSet* s : {&a, &b, &c})
    for (NodeId n : *s)
      require_node(g, n);
  auto overlaps = [](const NodeSet& x, const NodeSet& y) {
    return std::ranges::any_of(x, [&](NodeId n) { return y.contains(n); });
  };
  if (overlaps(a, b) || overlaps(a, c) || overlaps(b, c))
    throw ScmError(ErrorCode::OverlappingSets, "d-separation sets must be pairwise disjoint");
  if (!is_acyclic(g))
    throw ScmError(ErrorCode::CyclicGraph, "d-separation requires an acyclic graph");

  // Nodes that are in C or have a descendant in C; colliders among them are open.
  NodeSet opens_collider = c;
  for (NodeId n : ancestors(g, c))
    opens_collider.insert(n);

  // Reachability over (node, direction) states. `up` means we arrived from a child.
  enum class Dir { Up, Down };
  std::set<std::pair<NodeId, Dir>> visited;
  std::deque<std::pair<NodeId, Dir>> frontier;
  for (NodeId s : a)
    frontier.emplace_back(s, Dir::Up);

  while (!frontier.empty()) {
    const auto [n, dir] = frontier.front();
    frontier.pop_front();
    if (!visited.insert({n, dir}).second)
      continue;
    if (!c.contains(n) && b.contains(n))
      return false;

    if (dir == Dir::Up && !c.contains(n)) {
      for (NodeId p : parents(g, n))
        frontier.emplace_back(p, Dir::Up);
      for (NodeId ch : children(g, n))
        frontier.emplace_back(ch, Dir::Down);
    } else if (dir == Dir::Down) {
      if (!c.contains(n))
        for (NodeId ch : children(g, n))
          frontier.emplace_back(ch, Dir::Down);
      if (opens_collider.contains(n))
        for (NodeId p : parents(g, n))
          frontier.emplace_back(p, Dir::Up);
    }
  }
  return true;
}

EdgeClassification classify_edges(const CausalGraph& g, const NodeSet& module) {
  for (NodeId n : module)
    require_node(g, n);
  EdgeClassification out;
  for (const Edge& e : g.edges()) {
    const bool from_in = module.contains(e.first);
    const bool to_in = module.contains(e.second);
    if (from_in && to_in)
      out.interior.insert(e);
    else if (!from_in && !to_in)
      out.exterior.insert(e);
    else if (to_in)
      out.incoming.insert(e);
    else
      out.outgoing.insert(e);
  }
  return out;
}

} // namespace scm
