#include "scm/model.hpp"

#include "scm/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace scm {

Value make_value(std::string token) {
  Value v{std::move(token), std::nullopt};
  v.numeric = try_parse_rational(v.token);
  return v;
}

std::optional<ValueIndex> OutcomeSpace::index_of(std::string_view token) const {
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i].token == token)
      return static_cast<ValueIndex>(i);
  return std::nullopt;
}

std::size_t MechanismTable::row_count() const {
  return std::accumulate(parent_sizes.begin(), parent_sizes.end(), std::size_t{1}, std::multiplies<>());
}

std::size_t MechanismTable::row_index(std::span<const ValueIndex> parent_values) const {
  std::size_t index = 0;
  for (std::size_t k = 0; k < parent_sizes.size(); ++k)
    index = index * parent_sizes[k] + static_cast<std::size_t>(parent_values[k]);
  return index;
}

std::vector<ValueIndex> MechanismTable::row_tuple(std::size_t row) const {
  std::vector<ValueIndex> tuple(parent_sizes.size());
  for (std::size_t k = parent_sizes.size(); k-- > 0;) {
    tuple[k] = static_cast<ValueIndex>(row % parent_sizes[k]);
    row /= parent_sizes[k];
  }
  return tuple;
}

MechanismTable MechanismTable::constant(NodeId target, ValueIndex value, bool apriori) {
  return MechanismTable{target, {}, {}, {value}, apriori};
}

Scm::Scm(ScmParts parts) : parts_(std::move(parts)) {
  for (NodeId n : all_nodes())
    by_name_.emplace(decl(n).name, n);

  parent_flat_.resize(parts_.mechanisms.size());
  for (std::size_t i = 0; i < parts_.mechanisms.size(); ++i)
    for (NodeId p : parts_.mechanisms[i].parents)
      parent_flat_[i].push_back(flat(p));

  CausalGraph endo_graph;
  for (std::size_t i = 0; i < endo_count(); ++i)
    endo_graph.add_node(NodeId::endo(i));
  for (const auto& [from, to] : parts_.graph.edges())
    if (from.is_endogenous() && to.is_endogenous() && from != to && endo_graph.contains(from) &&
        endo_graph.contains(to))
      endo_graph.add_edge(from, to);
  const auto topo = topological_order(endo_graph);
  acyclic_ = topo.acyclic && is_acyclic(parts_.graph);
  if (acyclic_)
    for (NodeId n : topo.order)
      endo_order_.push_back(n.index);
}

const NodeDecl& Scm::decl(NodeId n) const {
  const auto& v = n.is_endogenous() ? parts_.endogenous : parts_.exogenous;
  if (n.index >= v.size())
    throw ScmError(ErrorCode::UnknownNode, "node index out of range");
  return v[n.index];
}

std::optional<NodeId> Scm::find(std::string_view name) const {
  if (auto it = by_name_.find(name); it != by_name_.end())
    return it->second;
  return std::nullopt;
}

NodeId Scm::id(std::string_view name) const {
  if (auto n = find(name))
    return *n;
  throw ScmError(ErrorCode::UnknownNode, "unknown node \"" + std::string(name) + "\"",
                 {{"node", std::string(name)}});
}

ValueIndex Scm::value_index(NodeId n, std::string_view token) const {
  if (auto v = space(n).index_of(token))
    return *v;
  throw ScmError(ErrorCode::UnknownNode,
                 "value \"" + std::string(token) + "\" is not in the space of " + name(n),
                 {{"node", name(n)}, {"value", std::string(token)}});
}

NodeId Scm::node_at(std::size_t flat_index) const {
  return flat_index < endo_count() ? NodeId::endo(flat_index) : NodeId::exo(flat_index - endo_count());
}

std::vector<NodeId> Scm::all_nodes() const {
  auto out = endogenous_ids();
  auto exo = exogenous_ids();
  out.insert(out.end(), exo.begin(), exo.end());
  return out;
}

std::vector<NodeId> Scm::endogenous_ids() const {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < endo_count(); ++i)
    out.push_back(NodeId::endo(i));
  return out;
}

std::vector<NodeId> Scm::exogenous_ids() const {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < exo_count(); ++i)
    out.push_back(NodeId::exo(i));
  return out;
}

ValueIndex Scm::evaluate(std::size_t endo_index, std::span<const ValueIndex> full) const {
  const MechanismTable& m = parts_.mechanisms[endo_index];
  std::size_t row = 0;
  const auto& flat_parents = parent_flat_[endo_index];
  for (std::size_t k = 0; k < flat_parents.size(); ++k)
    row = row * m.parent_sizes[k] + static_cast<std::size_t>(full[flat_parents[k]]);
  return m.rows[row];
}

Rational Scm::exo_probability(std::span<const ValueIndex> exo_values) const {
  Rational p = 1;
  for (std::size_t j = 0; j < exo_values.size(); ++j)
    p *= parts_.measure.per_node[j][static_cast<std::size_t>(exo_values[j])];
  return p;
}

std::size_t Scm::exo_assignment_count() const {
  std::size_t count = 1;
  for (const auto& d : parts_.exogenous)
    count *= d.space.size();
  return count;
}

std::vector<ValueIndex> Scm::exo_assignment(std::size_t index) const {
  std::vector<ValueIndex> values(exo_count());
  for (std::size_t j = exo_count(); j-- > 0;) {
    const auto size = parts_.exogenous[j].space.size();
    values[j] = static_cast<ValueIndex>(index % size);
    index /= size;
  }
  return values;
}

bool Scm::same_model(const Scm& other) const {
  const auto& a = parts_;
  const auto& b = other.parts_;
  return a.endogenous == b.endogenous && a.exogenous == b.exogenous && a.graph == b.graph &&
         a.mechanisms == b.mechanisms && a.measure == b.measure;
}

namespace {

std::string edge_name(const Scm& scm, const Edge& e) {
  auto safe = [&](NodeId n) {
    const auto& v = n.is_endogenous() ? scm.endogenous() : scm.exogenous();
    return n.index < v.size() ? v[n.index].name : std::string("?");
  };
  return safe(e.first) + "->" + safe(e.second);
}

} // namespace

ValidationReport validate(const Scm& scm) {
  ValidationReport report;
  auto fail = [&](std::string code, std::string message, std::string subject) {
    report.violations.push_back({std::move(code), std::move(message), std::move(subject)});
  };

  std::set<std::string> names;
  for (NodeId n : scm.all_nodes()) {
    const NodeDecl& d = scm.decl(n);
    if (!names.insert(d.name).second)
      fail("duplicate-node", "duplicate node name " + d.name, d.name);
    if (d.space.size() == 0)
      fail("empty-space", "outcome space of " + d.name + " is empty", d.name);
    std::set<std::string> tokens;
    for (const Value& v : d.space.values())
      if (!tokens.insert(v.token).second)
        fail("duplicate-value", "space of " + d.name + " repeats value " + v.token, d.name);
    if (!scm.graph().contains(n))
      fail("missing-graph-node", d.name + " is not a graph node", d.name);
  }
  for (NodeId n : scm.graph().nodes()) {
    const auto& v = n.is_endogenous() ? scm.endogenous() : scm.exogenous();
    if (n.index >= v.size())
      fail("dangling-node", "graph contains a node with no declaration", "?");
  }

  for (const Edge& e : scm.graph().edges()) {
    if (e.second.is_exogenous())
      fail("edge-into-exogenous", "edge targets must be endogenous", edge_name(scm, e));
  }

  if (scm.mechanisms().size() != scm.endo_count())
    fail("mechanism-count", "expected one mechanism per endogenous node", "");

  const std::size_t mech_count = std::min(scm.mechanisms().size(), scm.endo_count());
  for (std::size_t i = 0; i < mech_count; ++i) {
    const MechanismTable& m = scm.mechanism(i);
    const NodeId target = NodeId::endo(i);
    const std::string& name = scm.endogenous()[i].name;
    if (m.target != target) {
      fail("mechanism-target", "mechanism at position of " + name + " targets another node", name);
      continue;
    }
    const NodeSet declared(m.parents.begin(), m.parents.end());
    bool parents_known = true;
    for (NodeId p : m.parents) {
      const auto& v = p.is_endogenous() ? scm.endogenous() : scm.exogenous();
      if (p.index >= v.size())
        parents_known = false;
    }
    if (!parents_known) {
      fail("dangling-parent", "mechanism of " + name + " references an undeclared parent", name);
      continue;
    }
    if (declared.size() != m.parents.size() ||
        (scm.graph().contains(target) && declared != parents(scm.graph(), target)))
      fail("arity-mismatch", "parent order of f_" + name + " does not match its graph parents", name);
    bool sizes_ok = m.parent_sizes.size() == m.parents.size();
    for (std::size_t k = 0; sizes_ok && k < m.parents.size(); ++k)
      sizes_ok = m.parent_sizes[k] == scm.space(m.parents[k]).size();
    if (!sizes_ok) {
      fail("arity-mismatch", "parent sizes of f_" + name + " do not match parent spaces", name);
      continue;
    }
    if (m.rows.size() != m.row_count()) {
      fail("non-total", "mechanism of " + name + " is not total over its parents' product space", name);
      continue;
    }
    const auto out_size = static_cast<ValueIndex>(scm.endogenous()[i].space.size());
    for (ValueIndex r : m.rows) {
      if (r < 0) {
        fail("non-total", "mechanism of " + name + " is not total over its parents' product space", name);
        break;
      }
      if (r >= out_size) {
        fail("value-out-of-space", "mechanism of " + name + " returns a value outside its space", name);
        break;
      }
    }
  }

  const auto& measure = scm.measure();
  if (measure.per_node.size() != scm.exo_count() || measure.apriori_known.size() != scm.exo_count()) {
    fail("measure-shape", "exogenous measure does not cover every exogenous node", "");
  } else {
    for (std::size_t j = 0; j < scm.exo_count(); ++j) {
      const std::string& name = scm.exogenous()[j].name;
      const auto& probs = measure.per_node[j];
      if (probs.size() != scm.exogenous()[j].space.size()) {
        fail("measure-shape", "measure of " + name + " does not cover its space", name);
        continue;
      }
      Rational sum = 0;
      bool negative = false;
      for (const Rational& p : probs) {
        negative |= p < 0;
        sum += p;
      }
      if (negative)
        fail("negative-probability", "measure of " + name + " has a negative probability", name);
      if (sum != 1)
        fail("measure-sum", "measure sums to " + format_rational(sum), name);
    }
  }
  return report;
}

} // namespace scm
