#include "scm/intervention.hpp"

#include "scm/error.hpp"
#include "scm/solver.hpp"

#include <algorithm>

namespace scm {

namespace {

void require_endogenous(const Scm& scm, NodeId n, const char* what) {
  scm.decl(n);
  if (!n.is_endogenous())
    throw ScmError(ErrorCode::InvalidArgument, std::string(what) + " must be endogenous: " + scm.name(n));
}

Intervener or_default(const Intervener& f) {
  if (f)
    return f;
  return [](const Scm& s, const InterventionSpec& spec) { return do_transform(s, spec); };
}

// Marginal of j under an intervention, one entry per value of j.
std::vector<Rational> do_marginal(const Scm& scm, const Intervener& intervene, const InterventionSpec& spec, NodeId j,
                                  Execution exec) {
  const Scm m = intervene(scm, spec);
  if (!m.acyclic()) {
    nlohmann::ordered_json details;
    details["intervention"] = to_json(spec, scm);
    throw ScmError(ErrorCode::CyclicGraph, "intervention leaves a cycle; detection needs an acyclic system", details);
  }
  const Distribution joint = joint_distribution(m, exec);
  std::vector<Rational> out(m.space(j).size());
  const std::size_t pos = m.flat(j);
  for (const auto& [values, p] : joint.support())
    out[static_cast<std::size_t>(values[pos])] += p;
  return out;
}

// Smallest (a < b, value) at which the marginals disagree.
std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> first_difference(
    const std::vector<std::vector<Rational>>& m) {
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = a + 1; b < m.size(); ++b)
      for (std::size_t v = 0; v < m[a].size(); ++v)
        if (m[a][v] != m[b][v])
          return std::tuple{a, b, v};
  return std::nullopt;
}

InterventionSpec with_target(InterventionSpec spec, NodeId n, ValueIndex v) {
  spec.targets.emplace_back(n, v);
  std::sort(spec.targets.begin(), spec.targets.end());
  return spec;
}

// Sweeps the values of i under a fixed context and fills `report` when they disagree on j.
bool compare_values(const Scm& scm, const Intervener& intervene, const InterventionSpec& context, NodeId i, NodeId j,
                    Execution exec, DetectionReport* report) {
  const std::size_t n = scm.space(i).size();
  std::vector<std::vector<Rational>> marginals;
  marginals.reserve(n);
  for (std::size_t v = 0; v < n; ++v)
    marginals.push_back(do_marginal(scm, intervene, with_target(context, i, static_cast<ValueIndex>(v)), j, exec));
  const auto diff = first_difference(marginals);
  if (!diff)
    return false;
  if (report) {
    const auto [a, b, v] = *diff;
    report->verdict = true;
    report->witness = DetectionWitness{with_target(context, i, static_cast<ValueIndex>(a)),
                                       with_target(context, i, static_cast<ValueIndex>(b)),
                                       j,
                                       static_cast<ValueIndex>(v),
                                       marginals[a][v],
                                       marginals[b][v]};
  }
  return true;
}

void check_pair(const Scm& scm, NodeId i, NodeId j) {
  require_endogenous(scm, i, "cause");
  require_endogenous(scm, j, "effect");
  if (i == j)
    throw ScmError(ErrorCode::InvalidArgument, "cause and effect must differ");
}

std::vector<NodeId> observed_nodes(const Scm& scm, const DetectionOptions& opts) {
  std::vector<NodeId> obs = opts.observed.empty() ? scm.endogenous_ids() : opts.observed;
  for (NodeId n : obs)
    require_endogenous(scm, n, "observed node");
  std::sort(obs.begin(), obs.end());
  obs.erase(std::unique(obs.begin(), obs.end()), obs.end());
  return obs;
}

} // namespace

Scm do_transform(const Scm& scm, const InterventionSpec& spec) {
  ScmParts parts = scm.parts();
  NodeSet seen;
  for (const auto& [node, value] : spec.targets) {
    scm.decl(node);
    if (!node.is_endogenous())
      throw ScmError(ErrorCode::InvalidArgument, "cannot intervene on exogenous node " + scm.name(node));
    if (!seen.insert(node).second)
      throw ScmError(ErrorCode::InvalidArgument, "node intervened twice: " + scm.name(node));
    if (value < 0 || static_cast<std::size_t>(value) >= scm.space(node).size())
      throw ScmError(ErrorCode::InvalidArgument, "intervention value out of space for " + scm.name(node));
    parts.mechanisms[node.index] = MechanismTable::constant(node, value);
    for (NodeId p : parents(parts.graph, node))
      parts.graph.remove_edge(p, node);
  }
  return Scm(std::move(parts));
}

Distribution do_distribution(const Scm& scm, const InterventionSpec& spec, Execution exec) {
  return joint_distribution(do_transform(scm, spec), exec);
}

Distribution mixed_do(const Scm& scm, NodeId target, const std::vector<std::pair<ValueIndex, Rational>>& weights,
                      Execution exec) {
  require_endogenous(scm, target, "mixed intervention target");
  Rational sum = 0;
  for (const auto& [v, w] : weights) {
    if (w < 0)
      throw ScmError(ErrorCode::InvalidArgument, "negative mixture weight");
    sum += w;
  }
  if (weights.empty() || sum != 1)
    throw ScmError(ErrorCode::InvalidArgument, "mixture weights must sum to 1, got " + format_rational(sum));
  std::vector<std::pair<Rational, Distribution>> parts;
  for (const auto& [v, w] : weights)
    parts.emplace_back(w, do_distribution(scm, InterventionSpec{{{target, v}}}, exec));
  return mixture(parts);
}

DetectionReport detect_cause(const Scm& scm, NodeId i, NodeId j, const DetectionOptions& opts) {
  check_pair(scm, i, j);
  DetectionReport report;
  report.rule = Rule::First;
  report.contexts_total = 1;
  report.contexts_checked = 1;
  compare_values(scm, or_default(opts.intervener), InterventionSpec{}, i, j, opts.exec, &report);
  return report;
}

DetectionReport detect_direct_cause(const Scm& scm, NodeId i, NodeId j, const DetectionOptions& opts) {
  check_pair(scm, i, j);
  const auto obs = observed_nodes(scm, opts);
  if (!std::binary_search(obs.begin(), obs.end(), i) || !std::binary_search(obs.begin(), obs.end(), j))
    throw ScmError(ErrorCode::InvalidArgument, "cause and effect must be observed nodes");
  std::vector<NodeId> ctx_nodes;
  for (NodeId n : obs)
    if (n != i && n != j)
      ctx_nodes.push_back(n);

  std::size_t total = 1;
  for (NodeId n : ctx_nodes)
    total *= scm.space(n).size();
  const std::size_t limit = opts.exhaustive ? total : std::min(total, opts.context_cap);

  auto context_at = [&](std::size_t index) {
    InterventionSpec spec;
    std::vector<ValueIndex> values(ctx_nodes.size());
    for (std::size_t k = ctx_nodes.size(); k-- > 0;) {
      const std::size_t r = scm.space(ctx_nodes[k]).size();
      values[k] = static_cast<ValueIndex>(index % r);
      index /= r;
    }
    for (std::size_t k = 0; k < ctx_nodes.size(); ++k)
      spec.targets.emplace_back(ctx_nodes[k], values[k]);
    return spec;
  };

  const Intervener intervene = or_default(opts.intervener);
  const Execution inner = opts.exec == Execution::Parallel ? Execution::Serial : opts.exec;
  const auto hit = kernels::first_match(
      limit,
      [&](std::size_t c) {
        try {
          return compare_values(scm, intervene, context_at(c), i, j, inner, nullptr);
        } catch (...) {
          return true;  // rethrown by the serial pass below
        }
      },
      opts.exec);

  DetectionReport report;
  report.rule = Rule::Second;
  report.contexts_total = total;
  report.contexts_checked = limit;
  report.exhaustive = limit == total;
  if (hit)
    compare_values(scm, intervene, context_at(*hit), i, j, Execution::Serial, &report);
  return report;
}

CausalGraph discover_graph(const Scm& scm, const DetectionOptions& opts) {
  const auto obs = observed_nodes(scm, opts);
  CausalGraph g;
  for (NodeId n : obs)
    g.add_node(n);
  for (NodeId i : obs)
    for (NodeId j : obs)
      if (i != j && detect_direct_cause(scm, i, j, opts).verdict)
        g.add_edge(i, j);
  return g;
}

ConsistencyReport intervention_consistent(const Scm& scm, NodeId i, ValueIndex xi, NodeId j, Execution exec) {
  check_pair(scm, i, j);
  const Distribution natural = joint_distribution(scm, exec);
  const Distribution done = do_distribution(scm, InterventionSpec{{{i, xi}}}, exec);
  const Event given = Event::equals(i, xi);
  ConsistencyReport report;
  for (std::size_t v = 0; v < scm.space(j).size(); ++v) {
    const Event ev = Event::equals(j, static_cast<ValueIndex>(v));
    const Rational p_do = done.probability(ev);
    const Rational p_cond = conditional(natural, ev, given);
    if (p_do != p_cond) {
      report.consistent = false;
      report.value = static_cast<ValueIndex>(v);
      report.p_do = p_do;
      report.p_cond = p_cond;
      break;
    }
  }
  return report;
}

SymmetricDetectionReport symmetric_detection_check(const Scm& scm, NodeId i, NodeId j, const InterventionSpec& context,
                                                   Execution exec) {
  check_pair(scm, i, j);
  NodeSet fixed;
  for (const auto& [n, v] : context.targets)
    fixed.insert(n);
  if (fixed.contains(i) || fixed.contains(j))
    throw ScmError(ErrorCode::InvalidArgument, "context must leave both nodes free");
  for (NodeId n : scm.endogenous_ids())
    if (n != i && n != j && !fixed.contains(n))
      throw ScmError(ErrorCode::InvalidArgument, "context must fix every other endogenous node, missing " + scm.name(n));

  const Scm m = do_transform(scm, context);
  DetectionOptions opts;
  opts.observed = {i, j};
  opts.exec = exec;

  SymmetricDetectionReport r;
  r.context = context;
  r.i_to_j = detect_direct_cause(m, i, j, opts).verdict;
  r.j_to_i = detect_direct_cause(m, j, i, opts).verdict;

  const Distribution natural = joint_distribution(m, exec);
  auto all_consistent = [&](NodeId a, NodeId b) {
    for (std::size_t v = 0; v < m.space(a).size(); ++v) {
      const auto xi = static_cast<ValueIndex>(v);
      if (natural.probability(Event::equals(a, xi)) == 0)
        continue;  // almost every value
      if (!intervention_consistent(m, a, xi, b, exec).consistent)
        return false;
    }
    return true;
  };
  r.i_consistent = all_consistent(i, j);
  r.j_consistent = all_consistent(j, i);
  r.biconditional = r.i_to_j == r.j_to_i;
  return r;
}

Scm instrumented_do(const Scm& scm, NodeId target, ValueIndex value, const std::vector<Leak>& leaks,
                    const std::string& instrument_name) {
  require_endogenous(scm, target, "intervention target");
  Scm base = do_transform(scm, InterventionSpec{{{target, value}}});
  if (leaks.empty())
    return base;
  if (scm.find(instrument_name))
    throw ScmError(ErrorCode::InvalidArgument, "instrument name already in use: " + instrument_name);

  ScmParts parts = base.parts();
  const OutcomeSpace& ispace = scm.space(target);
  const NodeId inst = NodeId::endo(parts.endogenous.size());
  parts.endogenous.push_back(NodeDecl{instrument_name, ispace});
  parts.mechanisms.push_back(MechanismTable::constant(inst, value));
  parts.graph.add_node(inst);

  NodeSet leaked;
  for (const Leak& leak : leaks) {
    scm.decl(leak.node);
    if (!leak.node.is_endogenous())
      throw ScmError(ErrorCode::MalformedLeak, "leak target must be endogenous: " + scm.name(leak.node));
    if (leak.node == target)
      throw ScmError(ErrorCode::MalformedLeak, "leak into the intervened node itself: " + scm.name(target));
    if (!leaked.insert(leak.node).second)
      throw ScmError(ErrorCode::MalformedLeak, "node leaked twice: " + scm.name(leak.node));
    const std::size_t out = scm.space(leak.node).size();
    if (leak.table.size() != ispace.size())
      throw ScmError(ErrorCode::MalformedLeak, "leak table needs one row per instrument value for " + scm.name(leak.node));
    for (const auto& row : leak.table) {
      if (row.size() != out)
        throw ScmError(ErrorCode::MalformedLeak, "leak row width must match the space of " + scm.name(leak.node));
      for (ValueIndex v : row)
        if (v < 0 || static_cast<std::size_t>(v) >= out)
          throw ScmError(ErrorCode::MalformedLeak, "leak value out of space for " + scm.name(leak.node));
    }

    MechanismTable& mech = parts.mechanisms[leak.node.index];
    MechanismTable next = mech;
    next.parents.push_back(inst);
    next.parent_sizes.push_back(ispace.size());
    next.rows.assign(mech.row_count() * ispace.size(), -1);
    for (std::size_t r = 0; r < mech.row_count(); ++r)
      for (std::size_t k = 0; k < ispace.size(); ++k)
        next.rows[r * ispace.size() + k] = leak.table[k][static_cast<std::size_t>(mech.rows[r])];
    mech = std::move(next);
    parts.graph.add_edge(inst, leak.node);
  }
  return Scm(std::move(parts));
}

Intervener instrumented_intervener(NodeId target, std::vector<Leak> leaks, std::string instrument_name) {
  return [target, leaks = std::move(leaks), name = std::move(instrument_name)](const Scm& s,
                                                                               const InterventionSpec& spec) {
    const auto v = spec.value_of(target);
    if (!v)
      return do_transform(s, spec);
    InterventionSpec rest;
    for (const auto& t : spec.targets)
      if (t.first != target)
        rest.targets.push_back(t);
    return instrumented_do(do_transform(s, rest), target, *v, leaks, name);
  };
}

std::string_view rule_name(Rule r) { return r == Rule::First ? "first" : "second"; }

nlohmann::ordered_json to_json(const DetectionReport& r, const Scm& scm) {
  nlohmann::ordered_json j;
  j["verdict"] = r.verdict;
  j["rule"] = rule_name(r.rule);
  j["exhaustive"] = r.exhaustive;
  j["contexts_checked"] = r.contexts_checked;
  j["contexts_total"] = r.contexts_total;
  if (r.witness) {
    const auto& w = *r.witness;
    nlohmann::ordered_json jw;
    jw["a"] = to_json(w.a, scm);
    jw["b"] = to_json(w.b, scm);
    jw["event"] = scm.name(w.event_node) + "=" + scm.space(w.event_node).token(w.event_value);
    jw["p_a"] = format_rational(w.p_a);
    jw["p_b"] = format_rational(w.p_b);
    j["witness"] = jw;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

nlohmann::ordered_json to_json(const ConsistencyReport& r, const Scm& scm, NodeId j) {
  nlohmann::ordered_json out;
  out["consistent"] = r.consistent;
  if (r.value) {
    out["event"] = scm.name(j) + "=" + scm.space(j).token(*r.value);
    out["p_do"] = format_rational(r.p_do);
    out["p_cond"] = format_rational(r.p_cond);
  }
  return out;
}

nlohmann::ordered_json to_json(const SymmetricDetectionReport& r, const Scm& scm, NodeId i, NodeId j) {
  nlohmann::ordered_json out;
  out["context"] = to_json(r.context, scm);
  out[scm.name(i) + "->" + scm.name(j)] = r.i_to_j;
  out[scm.name(j) + "->" + scm.name(i)] = r.j_to_i;
  out["consistent_" + scm.name(i)] = r.i_consistent;
  out["consistent_" + scm.name(j)] = r.j_consistent;
  out["biconditional"] = r.biconditional;
  return out;
}

} // namespace scm
