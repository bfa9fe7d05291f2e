#pragma once

#include "scm/distribution.hpp"
#include "scm/intervention_spec.hpp"
#include "scm/kernels.hpp"
#include "scm/model.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace scm {

/// Perfect intervention: each target's mechanism becomes a parentless constant and its incoming
/// edges are cut. Throws InvalidArgument for exogenous, repeated or out-of-space targets.
Scm do_transform(const Scm& scm, const InterventionSpec& spec);

Distribution do_distribution(const Scm& scm, const InterventionSpec& spec, Execution exec = Execution::Parallel);

/// Mixture of do(target=v) weighted by `weights` (must sum to 1).
Distribution mixed_do(const Scm& scm, NodeId target, const std::vector<std::pair<ValueIndex, Rational>>& weights,
                      Execution exec = Execution::Parallel);

/// How an experimenter realises an intervention. Defaults to do_transform; instrumented
/// interventions swap in a model that carries side effects.
using Intervener = std::function<Scm(const Scm&, const InterventionSpec&)>;

enum class Rule { First, Second };

struct DetectionWitness {
  InterventionSpec a;
  InterventionSpec b;
  NodeId event_node;
  ValueIndex event_value = 0;
  Rational p_a;
  Rational p_b;
};

struct DetectionReport {
  bool verdict = false;
  Rule rule = Rule::First;
  std::optional<DetectionWitness> witness;
  bool exhaustive = true;
  std::size_t contexts_checked = 0;
  std::size_t contexts_total = 0;
};

struct DetectionOptions {
  // Endogenous nodes the experimenter knows about and can intervene on. Empty means all.
  std::vector<NodeId> observed;
  std::size_t context_cap = 10000;
  bool exhaustive = false;  // ignore the cap
  Intervener intervener;
  Execution exec = Execution::Parallel;
};

/// Rule 1: some pair of values for i gives different do-marginals of j.
DetectionReport detect_cause(const Scm& scm, NodeId i, NodeId j, const DetectionOptions& opts = {});

/// Rule 2: every observed node except j is intervened; some context and pair of values for i
/// gives different do-marginals of j. The smallest (context, pair, value) witness is reported.
DetectionReport detect_direct_cause(const Scm& scm, NodeId i, NodeId j, const DetectionOptions& opts = {});

/// Pairwise rule 2 over the observed nodes.
CausalGraph discover_graph(const Scm& scm, const DetectionOptions& opts = {});

struct ConsistencyReport {
  bool consistent = true;
  // first value of j where do and conditioning disagree
  std::optional<ValueIndex> value;
  Rational p_do;
  Rational p_cond;
};

/// P(X_j | do X_i=ξ) against P(X_j | X_i=ξ) on every value of X_j.
/// Throws ConditionOnNull when P(X_i=ξ)=0 and the solver errors when the natural joint is undefined.
ConsistencyReport intervention_consistent(const Scm& scm, NodeId i, ValueIndex xi, NodeId j,
                                          Execution exec = Execution::Parallel);

struct SymmetricDetectionReport {
  InterventionSpec context;
  bool i_to_j = false;
  bool j_to_i = false;
  bool i_consistent = false;  // for every positive-probability value of i
  bool j_consistent = false;
  bool biconditional = false;  // i_to_j == j_to_i
};

/// Under `context` (which must fix every endogenous node except i and j), runs rule 2 both
/// ways and checks consistency of both single-node interventions.
SymmetricDetectionReport symmetric_detection_check(const Scm& scm, NodeId i, NodeId j, const InterventionSpec& context,
                                                   Execution exec = Execution::Parallel);

/// A side effect of an imperfect intervention. The instrument feeds into `node`, whose new
/// value is table[instrument value][original value].
struct Leak {
  NodeId node;
  std::vector<std::vector<ValueIndex>> table;
};

/// do(target=value) realised through an extra endogenous instrument node that is fixed to
/// `value` and leaks into other mechanisms. No leaks means plain do_transform.
/// Throws MalformedLeak for bad tables or a leak into the target.
Scm instrumented_do(const Scm& scm, NodeId target, ValueIndex value, const std::vector<Leak>& leaks,
                    const std::string& instrument_name = "instrument");

/// Intervener that routes interventions on `target` through instrumented_do.
Intervener instrumented_intervener(NodeId target, std::vector<Leak> leaks, std::string instrument_name = "instrument");

std::string_view rule_name(Rule r);
nlohmann::ordered_json to_json(const DetectionReport& r, const Scm& scm);
nlohmann::ordered_json to_json(const ConsistencyReport& r, const Scm& scm, NodeId j);
nlohmann::ordered_json to_json(const SymmetricDetectionReport& r, const Scm& scm, NodeId i, NodeId j);

} // namespace scm
