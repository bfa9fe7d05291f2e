#include "scm/apriori.hpp"

#include "scm/error.hpp"
#include "scm/solver.hpp"

#include <algorithm>
#include <map>

namespace scm {

namespace {

void add_unique(std::vector<NodeId>& v, NodeId n) {
  if (std::find(v.begin(), v.end(), n) == v.end())
    v.push_back(n);
}

std::vector<std::size_t> sizes_of(const Scm& scm, const std::vector<NodeId>& nodes) {
  std::vector<std::size_t> out;
  for (NodeId n : nodes)
    out.push_back(scm.space(n).size());
  return out;
}

nlohmann::ordered_json assignment_json(const Scm& scm, std::span<const NodeId> nodes,
                                       std::span<const ValueIndex> values) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t k = 0; k < nodes.size(); ++k)
    j[scm.name(nodes[k])] = scm.space(nodes[k]).token(values[k]);
  return j;
}

// Drops one endogenous node, shifting later endogenous indices down.
ScmParts without_node(ScmParts parts, NodeId victim) {
  auto remap = [&](NodeId n) {
    if (n.is_endogenous() && n.index > victim.index)
      return NodeId::endo(n.index - 1);
    return n;
  };
  parts.endogenous.erase(parts.endogenous.begin() + static_cast<std::ptrdiff_t>(victim.index));
  parts.mechanisms.erase(parts.mechanisms.begin() + static_cast<std::ptrdiff_t>(victim.index));
  for (auto& m : parts.mechanisms) {
    m.target = remap(m.target);
    for (auto& p : m.parents)
      p = remap(p);
  }
  CausalGraph g;
  for (NodeId n : parts.graph.nodes())
    if (n != victim)
      g.add_node(remap(n));
  for (const auto& [from, to] : parts.graph.edges())
    if (from != victim && to != victim)
      g.add_edge(remap(from), remap(to));
  parts.graph = std::move(g);
  return parts;
}

// Does some row of `g` agree with every entry of `known`?
bool consistent_with(const MechanismTable& g, const std::map<NodeId, ValueIndex>& known) {
  for (std::size_t r = 0; r < g.row_count(); ++r) {
    if (g.rows[r] < 0)
      continue;
    const auto tuple = g.row_tuple(r);
    bool ok = true;
    if (auto it = known.find(g.target); it != known.end() && it->second != g.rows[r])
      ok = false;
    for (std::size_t k = 0; ok && k < g.parents.size(); ++k)
      if (auto it = known.find(g.parents[k]); it != known.end() && it->second != tuple[k])
        ok = false;
    if (ok)
      return true;
  }
  return false;
}

} // namespace

AprioriModule ap_module(const Scm& scm, NodeId anchor) {
  scm.decl(anchor);
  if (!anchor.is_endogenous() || !scm.mechanism(anchor.index).apriori)
    throw ScmError(ErrorCode::NotApriori, "anchor is not an a-priori node: " + scm.name(anchor));
  AprioriModule m{anchor, {anchor}};
  std::vector<NodeId> frontier{anchor};
  while (!frontier.empty()) {
    const NodeId n = frontier.back();
    frontier.pop_back();
    if (!n.is_endogenous() || !scm.mechanism(n.index).apriori)
      continue;
    for (NodeId p : parents(scm.graph(), n))
      if (m.members.insert(p).second)
        frontier.push_back(p);
  }
  return m;
}

bool propagate_apriori(const CompositionPlan& plan) {
  return std::all_of(plan.constituents.begin(), plan.constituents.end(), [](bool b) { return b; }) &&
         std::all_of(plan.absorbed_exogenous.begin(), plan.absorbed_exogenous.end(), [](bool b) { return b; });
}

Scm marginalize(const Scm& scm, NodeId victim) {
  scm.decl(victim);
  if (!victim.is_endogenous())
    throw ScmError(ErrorCode::InvalidArgument, "only endogenous nodes can be marginalized: " + scm.name(victim));
  if (ancestors(scm.graph(), {victim}).contains(victim))
    throw ScmError(ErrorCode::CyclicGraph, "cannot marginalize a node on a cycle: " + scm.name(victim));

  ScmParts parts = scm.parts();
  const MechanismTable& vm = scm.mechanism(victim.index);
  for (std::size_t c = 0; c < scm.endo_count(); ++c) {
    const MechanismTable& old = scm.mechanism(c);
    if (std::find(old.parents.begin(), old.parents.end(), victim) == old.parents.end())
      continue;
    MechanismTable next;
    next.target = old.target;
    std::vector<bool> absorbed;
    for (NodeId p : old.parents) {
      if (p != victim) {
        add_unique(next.parents, p);
        continue;
      }
      for (NodeId q : vm.parents) {
        const bool fresh = std::find(next.parents.begin(), next.parents.end(), q) == next.parents.end() &&
                           std::find(old.parents.begin(), old.parents.end(), q) == old.parents.end();
        add_unique(next.parents, q);
        if (fresh && q.is_exogenous())
          absorbed.push_back(scm.measure().apriori_known.at(q.index));
      }
    }
    next.parent_sizes = sizes_of(scm, next.parents);
    next.rows.assign(next.row_count(), -1);
    std::vector<ValueIndex> full(scm.node_count(), 0);
    for (std::size_t r = 0; r < next.row_count(); ++r) {
      const auto tuple = next.row_tuple(r);
      for (std::size_t k = 0; k < tuple.size(); ++k)
        full[scm.flat(next.parents[k])] = tuple[k];
      const ValueIndex v = scm.evaluate(victim.index, full);
      if (v < 0)
        continue;
      full[scm.flat(victim)] = v;
      next.rows[r] = scm.evaluate(c, full);
    }
    next.apriori = propagate_apriori({{old.apriori, vm.apriori}, absorbed});
    parts.mechanisms[c] = std::move(next);
    for (NodeId q : vm.parents)
      if (q != NodeId::endo(c))
        parts.graph.add_edge(q, NodeId::endo(c));
  }
  return Scm(without_node(std::move(parts), victim));
}

EquivalenceReport causally_equivalent(const Scm& a, const Scm& b, const NodeSet& module) {
  if (a.endogenous() != b.endogenous() || a.exogenous() != b.exogenous() ||
      a.measure().per_node != b.measure().per_node)
    throw ScmError(ErrorCode::ModelMismatch, "models differ in nodes, spaces or exogenous measure");
  if (!a.acyclic())
    throw ScmError(ErrorCode::CyclicGraph, "equivalence is defined for an acyclic original");
  for (NodeId n : module)
    a.decl(n);

  std::vector<NodeId> outside;
  for (NodeId n : a.all_nodes())
    if (!module.contains(n))
      outside.push_back(n);
  const CausalGraph& ga = a.graph();
  const CausalGraph& gb = b.graph();

  EquivalenceReport r;
  auto fail = [](Criterion& c, nlohmann::ordered_json ex) {
    if (c.holds) {
      c.holds = false;
      c.counterexample = std::move(ex);
    }
  };
  auto pair_json = [&](NodeId j, NodeId k) { return nlohmann::ordered_json::array({a.name(j), a.name(k)}); };

  for (NodeId j : outside)
    for (NodeId k : outside)
      if (j != k && ga.has_edge(j, k) != gb.has_edge(j, k))
        fail(r.i_a, pair_json(j, k));

  auto linkage = [&](const CausalGraph& g) {
    std::vector<std::pair<NodeSet, NodeSet>> out;
    for (NodeId l : module)
      out.emplace_back(ancestors(g, {l}), descendants(g, {l}));
    return out;
  };
  const auto la = linkage(ga);
  const auto lb = linkage(gb);
  auto linked = [](const std::vector<std::pair<NodeSet, NodeSet>>& l, NodeId j, NodeId k) {
    return std::any_of(l.begin(), l.end(), [&](const auto& p) { return p.first.contains(j) && p.second.contains(k); });
  };
  for (NodeId j : outside)
    for (NodeId k : outside)
      if (j != k && linked(la, j, k) != linked(lb, j, k))
        fail(r.i_b, pair_json(j, k));

  auto into_module = [&](const CausalGraph& g, NodeId j) {
    const auto ch = children(g, j);
    return std::any_of(ch.begin(), ch.end(), [&](NodeId n) { return module.contains(n); });
  };
  auto from_module = [&](const CausalGraph& g, NodeId j) {
    const auto pa = parents(g, j);
    return std::any_of(pa.begin(), pa.end(), [&](NodeId n) { return module.contains(n); });
  };
  for (NodeId j : outside) {
    if (into_module(ga, j) != into_module(gb, j))
      fail(r.ii_a, a.name(j));
    if (from_module(ga, j) != from_module(gb, j))
      fail(r.ii_b, a.name(j));
  }

  const auto exo_ids = a.exogenous_ids();
  const auto endo_ids = a.endogenous_ids();
  for (std::size_t i = 0; i < a.exo_assignment_count() && r.iii.holds; ++i) {
    const auto e = a.exo_assignment(i);
    if (a.exo_probability(e) == 0)
      continue;
    const auto sa = solve(a, e);
    const auto sb = solve(b, e);
    if (sb.solutions.size() != 1) {
      nlohmann::ordered_json d;
      d["exogenous"] = assignment_json(a, exo_ids, e);
      d["solution_count"] = sb.solutions.size();
      throw ScmError(ErrorCode::NonUniqueSolution, "remodeled system lacks a unique solution", d);
    }
    if (sa.solutions[0] != sb.solutions[0]) {
      nlohmann::ordered_json ex;
      ex["exogenous"] = assignment_json(a, exo_ids, e);
      ex["original"] = assignment_json(a, endo_ids, sa.solutions[0]);
      ex["remodeled"] = assignment_json(b, endo_ids, sb.solutions[0]);
      fail(r.iii, ex);
    }
  }
  return r;
}

Scm reverse_edge_remodel(const Scm& scm, const std::vector<Edge>& edges) {
  if (!scm.acyclic())
    throw ScmError(ErrorCode::CyclicGraph, "remodeling needs an acyclic model");
  if (edges.empty())
    return scm;

  // an edge may be reversed when its head sits in the module of some a-priori node
  NodeSet reachable;
  for (std::size_t i = 0; i < scm.endo_count(); ++i)
    if (scm.mechanism(i).apriori)
      for (NodeId n : ap_module(scm, NodeId::endo(i)).members)
        reachable.insert(n);

  const std::size_t n = scm.endo_count();
  std::vector<std::vector<NodeId>> par(n);
  std::vector<bool> flag(n);
  for (std::size_t i = 0; i < n; ++i) {
    par[i] = scm.mechanism(i).parents;
    flag[i] = scm.mechanism(i).apriori;
  }
  std::vector<bool> touched(n, false);

  for (const auto& [u, v] : edges) {
    scm.decl(u);
    scm.decl(v);
    const std::string label = scm.name(u) + "->" + scm.name(v);
    if (!u.is_endogenous() || !v.is_endogenous())
      throw ScmError(ErrorCode::InvalidArgument, "only edges between endogenous nodes can be reversed: " + label);
    if (!reachable.contains(v))
      throw ScmError(ErrorCode::InvalidArgument, "edge is neither interior nor incoming for an a-priori module: " + label);
    auto& pv = par[v.index];
    const auto pos = std::find(pv.begin(), pv.end(), u);
    if (pos == pv.end())
      throw ScmError(ErrorCode::InvalidArgument, "no such edge: " + label);

    std::vector<NodeId> next;
    std::vector<bool> absorbed;
    for (NodeId p : pv) {
      if (p != u) {
        add_unique(next, p);
        continue;
      }
      for (NodeId q : par[u.index]) {
        if (q == v)
          continue;
        if (q.is_exogenous() && std::find(pv.begin(), pv.end(), q) == pv.end())
          absorbed.push_back(scm.measure().apriori_known.at(q.index));
        add_unique(next, q);
      }
    }
    pv = std::move(next);
    par[u.index] = {v};
    flag[v.index] = propagate_apriori({{flag[v.index], scm.mechanism(u.index).apriori}, absorbed});
    flag[u.index] = scm.mechanism(v.index).apriori;
    touched[u.index] = touched[v.index] = true;
  }

  ScmParts parts = scm.parts();
  for (std::size_t i = 0; i < n; ++i) {
    if (!touched[i])
      continue;
    const NodeId t = NodeId::endo(i);
    for (NodeId p : parents(parts.graph, t))
      parts.graph.remove_edge(p, t);
    for (NodeId p : par[i])
      parts.graph.add_edge(p, t);
  }
  if (!is_acyclic(parts.graph))
    throw ScmError(ErrorCode::CyclicGraph, "edge reversal closes a cycle");

  // rows seen along the original solutions
  for (std::size_t i = 0; i < n; ++i) {
    if (!touched[i])
      continue;
    MechanismTable m;
    m.target = NodeId::endo(i);
    m.parents = par[i];
    m.parent_sizes = sizes_of(scm, m.parents);
    m.rows.assign(m.row_count(), -1);
    m.apriori = flag[i];
    parts.mechanisms[i] = std::move(m);
  }
  const auto exo_ids = scm.exogenous_ids();
  std::vector<ValueIndex> full(scm.node_count(), 0);
  for (std::size_t k = 0; k < scm.exo_assignment_count(); ++k) {
    const auto e = scm.exo_assignment(k);
    if (scm.exo_probability(e) == 0)
      continue;
    std::copy(e.begin(), e.end(), full.begin() + static_cast<std::ptrdiff_t>(n));
    evaluate_acyclic(scm, full);
    for (std::size_t i = 0; i < n; ++i) {
      if (!touched[i])
        continue;
      MechanismTable& m = parts.mechanisms[i];
      std::vector<ValueIndex> tuple;
      for (NodeId p : m.parents)
        tuple.push_back(full[scm.flat(p)]);
      ValueIndex& cell = m.rows[m.row_index(tuple)];
      if (cell >= 0 && cell != full[i]) {
        nlohmann::ordered_json d;
        d["node"] = scm.name(m.target);
        d["exogenous"] = assignment_json(scm, exo_ids, e);
        throw ScmError(ErrorCode::RemodelFailed, "no table for " + scm.name(m.target) + " reproduces the original solutions",
                       d);
      }
      cell = full[i];
    }
  }

  // unreached rows: first value the original a-priori mechanisms allow, else the first value
  std::vector<const MechanismTable*> fixed;
  for (const auto& m : scm.mechanisms())
    if (m.apriori)
      fixed.push_back(&m);
  for (std::size_t i = 0; i < n; ++i) {
    if (!touched[i])
      continue;
    MechanismTable& m = parts.mechanisms[i];
    for (std::size_t r = 0; r < m.row_count(); ++r) {
      if (m.rows[r] >= 0)
        continue;
      const auto tuple = m.row_tuple(r);
      ValueIndex pick = 0;
      for (std::size_t w = 0; w < scm.endogenous()[i].space.size(); ++w) {
        bool ok = true;
        for (const MechanismTable* g : fixed) {
          std::map<NodeId, ValueIndex> known;
          auto mentions = [&](NodeId x) {
            return g->target == x || std::find(g->parents.begin(), g->parents.end(), x) != g->parents.end();
          };
          if (!mentions(m.target))
            continue;
          for (std::size_t k = 0; k < m.parents.size(); ++k)
            if (mentions(m.parents[k]))
              known[m.parents[k]] = tuple[k];
          if (known.empty())
            continue;
          known[m.target] = static_cast<ValueIndex>(w);
          if (!consistent_with(*g, known)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          pick = static_cast<ValueIndex>(w);
          break;
        }
      }
      m.rows[r] = pick;
    }
  }
  return Scm(std::move(parts));
}

nlohmann::ordered_json to_json(const AprioriModule& m, const Scm& scm) {
  nlohmann::ordered_json j;
  j["anchor"] = scm.name(m.anchor);
  auto members = nlohmann::ordered_json::array();
  for (NodeId n : m.members)
    members.push_back(scm.name(n));
  j["members"] = members;
  return j;
}

nlohmann::ordered_json to_json(const EquivalenceReport& r) {
  nlohmann::ordered_json j;
  auto put = [&](const char* key, const Criterion& c) {
    nlohmann::ordered_json x;
    x["holds"] = c.holds;
    x["counterexample"] = c.counterexample;
    j[key] = x;
  };
  put("i_a", r.i_a);
  put("i_b", r.i_b);
  put("ii_a", r.ii_a);
  put("ii_b", r.ii_b);
  put("iii", r.iii);
  j["overall"] = r.overall();
  return j;
}

} // namespace scm
