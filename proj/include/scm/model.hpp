#pragma once

#include "scm/graph.hpp"
#include "scm/node.hpp"
#include "scm/rational.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scm {

/// One element of an outcome space: an opaque token, optionally annotated with a number so
/// arithmetic expressions can operate on it.
struct Value {
  std::string token;
  std::optional<Rational> numeric;

  bool operator==(const Value&) const = default;
};

/// A token that parses as a rational gets that number as its annotation.
Value make_value(std::string token);

class OutcomeSpace {
public:
  OutcomeSpace() = default;
  OutcomeSpace(std::string name, std::vector<Value> values)
      : name_(std::move(name)), values_(std::move(values)) {}

  const std::string& name() const { return name_; }
  const std::vector<Value>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const Value& at(ValueIndex i) const { return values_.at(static_cast<std::size_t>(i)); }
  const std::string& token(ValueIndex i) const { return at(i).token; }

  std::optional<ValueIndex> index_of(std::string_view token) const;

  bool operator==(const OutcomeSpace&) const = default;

private:
  std::string name_;
  std::vector<Value> values_;
};

struct NodeDecl {
  std::string name;
  OutcomeSpace space;

  bool operator==(const NodeDecl&) const = default;
};

/// A deterministic finite function from parent-value tuples to a value of the target's space.
/// Rows are laid out in mixed radix over `parent_sizes`, first parent most significant.
struct MechanismTable {
  NodeId target;
  std::vector<NodeId> parents;
  std::vector<std::size_t> parent_sizes;
  std::vector<ValueIndex> rows;  // -1 marks a missing row (caught by validate)
  bool apriori = false;

  std::size_t row_count() const;
  std::size_t row_index(std::span<const ValueIndex> parent_values) const;
  std::vector<ValueIndex> row_tuple(std::size_t row) const;
  ValueIndex lookup(std::span<const ValueIndex> parent_values) const { return rows[row_index(parent_values)]; }

  static MechanismTable constant(NodeId target, ValueIndex value, bool apriori = false);

  bool operator==(const MechanismTable&) const = default;
};

struct ExogenousMeasure {
  std::vector<std::vector<Rational>> per_node;  // per exogenous node, indexed by ValueIndex
  std::vector<bool> apriori_known;              // declared a-priori-known measures

  bool operator==(const ExogenousMeasure&) const = default;
};

/// Raw ingredients of a model. No invariants are enforced here; see validate().
struct ScmParts {
  std::vector<NodeDecl> endogenous;
  std::vector<NodeDecl> exogenous;
  CausalGraph graph;
  std::vector<MechanismTable> mechanisms;  // one per endogenous node, same order
  ExogenousMeasure measure;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
};

/// Immutable structural causal model over finite discrete spaces.
class Scm {
public:
  explicit Scm(ScmParts parts);

  const ScmParts& parts() const { return parts_; }
  const CausalGraph& graph() const { return parts_.graph; }
  const std::vector<NodeDecl>& endogenous() const { return parts_.endogenous; }
  const std::vector<NodeDecl>& exogenous() const { return parts_.exogenous; }
  const std::vector<MechanismTable>& mechanisms() const { return parts_.mechanisms; }
  const MechanismTable& mechanism(std::size_t endo_index) const { return parts_.mechanisms.at(endo_index); }
  const ExogenousMeasure& measure() const { return parts_.measure; }
  const nlohmann::ordered_json& meta() const { return parts_.meta; }

  std::size_t endo_count() const { return parts_.endogenous.size(); }
  std::size_t exo_count() const { return parts_.exogenous.size(); }
  std::size_t node_count() const { return endo_count() + exo_count(); }

  const NodeDecl& decl(NodeId n) const;
  const std::string& name(NodeId n) const { return decl(n).name; }
  const OutcomeSpace& space(NodeId n) const { return decl(n).space; }

  std::optional<NodeId> find(std::string_view name) const;
  /// Throws ScmError(UnknownNode).
  NodeId id(std::string_view name) const;
  /// Throws ScmError(UnknownNode) when the token is not in the node's space.
  ValueIndex value_index(NodeId n, std::string_view token) const;

  /// Position in a full assignment vector: endogenous first, then exogenous.
  std::size_t flat(NodeId n) const { return n.is_endogenous() ? n.index : endo_count() + n.index; }
  NodeId node_at(std::size_t flat_index) const;
  std::vector<NodeId> all_nodes() const;
  std::vector<NodeId> endogenous_ids() const;
  std::vector<NodeId> exogenous_ids() const;

  bool acyclic() const { return acyclic_; }
  /// Endogenous evaluation order; empty when cyclic.
  const std::vector<std::size_t>& endo_order() const { return endo_order_; }

  /// Evaluates f_i on a full assignment (only the parent entries are read).
  ValueIndex evaluate(std::size_t endo_index, std::span<const ValueIndex> full) const;

  Rational exo_probability(std::span<const ValueIndex> exo_values) const;
  std::size_t exo_assignment_count() const;
  /// Decodes the mixed-radix exogenous index, first exogenous node most significant.
  std::vector<ValueIndex> exo_assignment(std::size_t index) const;

  /// Structural equality of the model (meta ignored).
  bool same_model(const Scm& other) const;

private:
  ScmParts parts_;
  std::map<std::string, NodeId, std::less<>> by_name_;
  bool acyclic_ = false;
  std::vector<std::size_t> endo_order_;
  std::vector<std::vector<std::size_t>> parent_flat_;
};

struct Violation {
  std::string code;     // e.g. "arity-mismatch"
  std::string message;
  std::string subject;  // offending node or edge, by name

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every definitional constraint. Total: never throws on malformed models.
ValidationReport validate(const Scm& scm);

} // namespace scm
