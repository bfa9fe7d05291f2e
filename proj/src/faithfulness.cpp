#include "scm/faithfulness.hpp"

#include "scm/error.hpp"
#include "scm/solver.hpp"

#include <algorithm>

namespace scm {

namespace {

std::vector<std::vector<NodeId>> subsets_up_to(const std::vector<NodeId>& pool, std::size_t min, std::size_t max) {
  std::vector<std::vector<NodeId>> out;
  max = std::min(max, pool.size());
  for (std::size_t size = min; size <= max; ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t k = 0; k < size; ++k)
      idx[k] = k;
    while (true) {
      std::vector<NodeId> s;
      for (std::size_t k : idx)
        s.push_back(pool[k]);
      out.push_back(std::move(s));
      std::size_t k = size;
      while (k > 0 && idx[k - 1] == pool.size() - size + k - 1)
        --k;
      if (k == 0)
        break;
      ++idx[k - 1];
      for (std::size_t m = k; m < size; ++m)
        idx[m] = idx[m - 1] + 1;
    }
  }
  return out;
}

bool disjoint(const std::vector<NodeId>& x, const NodeSet& y) {
  return std::none_of(x.begin(), x.end(), [&](NodeId n) { return y.contains(n); });
}

void require_acyclic(const Scm& scm) {
  if (!scm.acyclic())
    throw ScmError(ErrorCode::CyclicGraph, "audit needs an acyclic model");
}

} // namespace

std::vector<Triple> enumerate_triples(const Scm& scm, const AuditOptions& opts) {
  const auto nodes = scm.endogenous_ids();
  const std::size_t big = nodes.size();
  const auto ab = subsets_up_to(nodes, 1, opts.exhaustive ? big : opts.max_ab);
  std::vector<Triple> out;
  for (std::size_t x = 0; x < ab.size(); ++x) {
    const NodeSet a(ab[x].begin(), ab[x].end());
    for (std::size_t y = x + 1; y < ab.size(); ++y) {
      if (!disjoint(ab[y], a))
        continue;
      const NodeSet b(ab[y].begin(), ab[y].end());
      std::vector<NodeId> rest;
      for (NodeId n : nodes)
        if (!a.contains(n) && !b.contains(n))
          rest.push_back(n);
      for (const auto& c : subsets_up_to(rest, 0, opts.exhaustive ? big : opts.max_c))
        out.push_back(Triple{a, b, NodeSet(c.begin(), c.end())});
    }
  }
  return out;
}

std::vector<Triple> faithfulness_audit(const Scm& scm, const AuditOptions& opts) {
  require_acyclic(scm);
  const Distribution joint = joint_distribution(scm, opts.exec);
  std::vector<Triple> out;
  for (const Triple& t : enumerate_triples(scm, opts))
    if (cond_independent(joint, t.a, t.b, t.c) && !d_separated(scm.graph(), t.a, t.b, t.c))
      out.push_back(t);
  return out;
}

std::vector<Triple> markov_violations(const Scm& scm, const AuditOptions& opts) {
  require_acyclic(scm);
  const Distribution joint = joint_distribution(scm, opts.exec);
  std::vector<Triple> out;
  for (const Triple& t : enumerate_triples(scm, opts))
    if (d_separated(scm.graph(), t.a, t.b, t.c) && !cond_independent(joint, t.a, t.b, t.c))
      out.push_back(t);
  return out;
}

nlohmann::ordered_json to_json(const std::vector<Triple>& triples, const Scm& scm) {
  auto names = [&](const NodeSet& s) {
    auto arr = nlohmann::ordered_json::array();
    for (NodeId n : s)
      arr.push_back(scm.name(n));
    return arr;
  };
  auto out = nlohmann::ordered_json::array();
  for (const Triple& t : triples) {
    nlohmann::ordered_json j;
    j["a"] = names(t.a);
    j["b"] = names(t.b);
    j["c"] = names(t.c);
    out.push_back(j);
  }
  return out;
}

} // namespace scm
