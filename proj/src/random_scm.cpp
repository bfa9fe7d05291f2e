#include "scm/random_scm.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace scm {

namespace {

OutcomeSpace numbered(std::size_t size) {
  std::vector<Value> values;
  for (std::size_t v = 0; v < size; ++v)
    values.push_back(make_value(std::to_string(v)));
  return OutcomeSpace("s" + std::to_string(size), std::move(values));
}

} // namespace

Scm random_scm(std::uint64_t seed, const RandomScmOptions& opts) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };

  ScmParts parts;
  const std::size_t n = pick(1, opts.max_endogenous);
  for (std::size_t i = 0; i < n; ++i) {
    parts.endogenous.push_back({"V" + std::to_string(i + 1), numbered(pick(2, opts.max_space))});
    parts.exogenous.push_back({"U" + std::to_string(i + 1), numbered(pick(2, opts.max_space))});
  }
  for (NodeId id : Scm(parts).all_nodes())
    parts.graph.add_node(id);

  for (std::size_t i = 0; i < n; ++i) {
    // positive weights 1..4, normalised
    std::vector<Rational> probs;
    Rational total = 0;
    for (std::size_t v = 0; v < parts.exogenous[i].space.size(); ++v) {
      probs.emplace_back(static_cast<long>(pick(1, 4)));
      total += probs.back();
    }
    for (auto& p : probs) {
      p /= total;
      p.canonicalize();
    }
    parts.measure.per_node.push_back(std::move(probs));
    parts.measure.apriori_known.push_back(false);

    MechanismTable m;
    m.target = NodeId::endo(i);
    for (std::size_t p = 0; p < i; ++p)
      if (pick(0, 1) == 1)
        m.parents.push_back(NodeId::endo(p));
    m.parents.push_back(NodeId::exo(i));
    for (NodeId p : m.parents) {
      m.parent_sizes.push_back(p.is_endogenous() ? parts.endogenous[p.index].space.size()
                                                 : parts.exogenous[p.index].space.size());
      parts.graph.add_edge(p, m.target);
    }
    const std::size_t out = parts.endogenous[i].space.size();
    do {
      m.rows.clear();
      for (std::size_t r = 0; r < m.row_count(); ++r)
        m.rows.push_back(static_cast<ValueIndex>(pick(0, out - 1)));
    } while (std::all_of(m.rows.begin(), m.rows.end(), [&](ValueIndex v) { return v == m.rows[0]; }));
    parts.mechanisms.push_back(std::move(m));
  }
  return Scm(std::move(parts));
}

} // namespace scm
