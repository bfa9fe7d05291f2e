#include "scm/distribution.hpp"

#include "scm/error.hpp"

#include <algorithm>

namespace scm {

ValueIndex AssignmentView::operator[](NodeId n) const {
  for (std::size_t k = 0; k < nodes.size(); ++k)
    if (nodes[k] == n)
      return values[k];
  throw ScmError(ErrorCode::UnknownNode, "event refers to a node outside the distribution");
}

bool Event::holds(const AssignmentView& a) const {
  return std::ranges::all_of(clauses, [&](const auto& clause) { return clause.second.contains(a[clause.first]); });
}

NodeSet Event::nodes() const {
  NodeSet out;
  for (const auto& clause : clauses)
    out.insert(clause.first);
  return out;
}

Event parse_event(const Scm& scm, std::string_view text) {
  Event event;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos)
      end = text.size();
    const auto clause = text.substr(start, end - start);
    if (!clause.empty()) {
      const auto eq = clause.find('=');
      if (eq == std::string_view::npos)
        throw ScmError(ErrorCode::Parse, "event clause \"" + std::string(clause) + "\" must be NODE=VALUE[|VALUE...]");
      const NodeId node = scm.id(clause.substr(0, eq));
      std::set<ValueIndex> allowed;
      auto values = clause.substr(eq + 1);
      std::size_t vs = 0;
      while (vs <= values.size()) {
        auto ve = values.find('|', vs);
        if (ve == std::string_view::npos)
          ve = values.size();
        allowed.insert(scm.value_index(node, values.substr(vs, ve - vs)));
        vs = ve + 1;
      }
      event.clauses.emplace_back(node, std::move(allowed));
    }
    start = end + 1;
  }
  return event;
}

void Distribution::add(const std::vector<ValueIndex>& values, const Rational& p) {
  if (p == 0)
    return;
  auto [it, inserted] = support_.try_emplace(values, p);
  if (!inserted)
    it->second += p;
}

Rational Distribution::total() const {
  Rational sum = 0;
  for (const auto& [_, p] : support_)
    sum += p;
  return sum;
}

Rational Distribution::probability(const Predicate& event) const {
  Rational sum = 0;
  for (const auto& [values, p] : support_)
    if (event(AssignmentView{nodes_, values}))
      sum += p;
  return sum;
}

Distribution marginal(const Distribution& dist, const NodeSet& nodes) {
  std::vector<std::size_t> positions;
  std::vector<NodeId> kept;
  for (NodeId n : nodes) {
    const auto it = std::ranges::find(dist.nodes(), n);
    if (it == dist.nodes().end())
      throw ScmError(ErrorCode::UnknownNode, "marginal over a node outside the distribution");
    positions.push_back(static_cast<std::size_t>(it - dist.nodes().begin()));
    kept.push_back(n);
  }
  Distribution out(std::move(kept));
  std::vector<ValueIndex> key(positions.size());
  for (const auto& [values, p] : dist.support()) {
    for (std::size_t k = 0; k < positions.size(); ++k)
      key[k] = values[positions[k]];
    out.add(key, p);
  }
  return out;
}

Rational conditional(const Distribution& dist, const Predicate& event, const Predicate& given) {
  const Rational p_given = dist.probability(given);
  if (p_given == 0)
    throw ScmError(ErrorCode::ConditionOnNull, "conditioning event has probability zero");
  const Rational p_both = dist.probability([&](const AssignmentView& a) { return event(a) && given(a); });
  return p_both / p_given;
}

bool dependent(const Distribution& dist, const Event& a, const Event& b) {
  const NodeSet na = a.nodes();
  if (std::ranges::any_of(b.nodes(), [&](NodeId n) { return na.contains(n); }))
    throw ScmError(ErrorCode::OverlappingSets, "dependence test needs events over disjoint node sets");
  const Rational pa = dist.probability(a);
  const Rational pb = dist.probability(b);
  const Rational pab = dist.probability([&](const AssignmentView& v) { return a.holds(v) && b.holds(v); });
  return pab != pa * pb;
}

bool cond_independent(const Distribution& dist, const NodeSet& a, const NodeSet& b, const NodeSet& c) {
  auto overlaps = [](const NodeSet& x, const NodeSet& y) {
    return std::ranges::any_of(x, [&](NodeId n) { return y.contains(n); });
  };
  if (overlaps(a, b) || overlaps(a, c) || overlaps(b, c))
    throw ScmError(ErrorCode::OverlappingSets, "independence sets must be pairwise disjoint");

  NodeSet all = a;
  all.insert(b.begin(), b.end());
  all.insert(c.begin(), c.end());
  const Distribution joint = marginal(dist, all);

  // Split each joint key into (a-part, b-part, c-part) following NodeId order of `all`.
  std::vector<int> role;  // 0 = a, 1 = b, 2 = c
  for (NodeId n : joint.nodes())
    role.push_back(a.contains(n) ? 0 : b.contains(n) ? 1 : 2);

  using Key = std::vector<ValueIndex>;
  std::map<Key, Rational> pc;
  std::map<std::pair<Key, Key>, Rational> pac, pbc;
  std::map<std::tuple<Key, Key, Key>, Rational> pabc;
  for (const auto& [values, p] : joint.support()) {
    Key ka, kb, kc;
    for (std::size_t k = 0; k < values.size(); ++k)
      (role[k] == 0 ? ka : role[k] == 1 ? kb : kc).push_back(values[k]);
    pc[kc] += p;
    pac[{ka, kc}] += p;
    pbc[{kb, kc}] += p;
    pabc[{ka, kb, kc}] += p;
  }

  // For every c with P(c) > 0: P(a,b,c)·P(c) = P(a,c)·P(b,c) for all a, b seen with c.
  std::map<Key, std::vector<std::pair<Key, Rational>>> a_given_c, b_given_c;
  for (const auto& [k, p] : pac)
    a_given_c[k.second].emplace_back(k.first, p);
  for (const auto& [k, p] : pbc)
    b_given_c[k.second].emplace_back(k.first, p);
  for (const auto& [kc, p_c] : pc) {
    for (const auto& [ka, p_ac] : a_given_c[kc]) {
      for (const auto& [kb, p_bc] : b_given_c[kc]) {
        const auto it = pabc.find({ka, kb, kc});
        const Rational p_abc = it == pabc.end() ? Rational(0) : it->second;
        if (p_abc * p_c != p_ac * p_bc)
          return false;
      }
    }
  }
  return true;
}

Distribution selection_filter(const Distribution& dist, const Predicate& keep) {
  const Rational kept = dist.probability(keep);
  if (kept == 0)
    throw ScmError(ErrorCode::FilterToNull, "selection filter keeps no outcome of positive probability");
  Distribution out(dist.nodes());
  for (const auto& [values, p] : dist.support())
    if (keep(AssignmentView{dist.nodes(), values}))
      out.add(values, p / kept);
  return out;
}

Distribution mixture(const std::vector<std::pair<Rational, Distribution>>& parts) {
  if (parts.empty())
    throw ScmError(ErrorCode::InvalidArgument, "mixture of zero distributions");
  Distribution out(parts.front().second.nodes());
  for (const auto& [w, d] : parts) {
    if (d.nodes() != out.nodes())
      throw ScmError(ErrorCode::InvalidArgument, "mixture components range over different nodes");
    for (const auto& [values, p] : d.support())
      out.add(values, w * p);
  }
  return out;
}

std::string assignment_key(const Scm& scm, std::span<const NodeId> nodes, std::span<const ValueIndex> values) {
  std::string key;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (k)
      key += ',';
    key += scm.name(nodes[k]) + "=" + scm.space(nodes[k]).token(values[k]);
  }
  return key;
}

nlohmann::ordered_json to_json(const Distribution& dist, const Scm& scm) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [values, p] : dist.support())
    j[assignment_key(scm, dist.nodes(), values)] = format_rational(p);
  return j;
}

} // namespace scm
