#pragma once

#include "scm/intervention.hpp"
#include "scm/model.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace scm {

/// An inference made under intervention set against what holds in the natural domain.
struct CrossDomainReport {
  std::string kind;  // "front_door" or "back_door"
  Scm model;         // the model the detection ran against
  NodeId cause;
  NodeId effect;
  DetectionReport interventional;
  std::optional<DetectionReport> control;  // clean interventions, back door only
  nlohmann::ordered_json natural;          // checked natural-domain facts
  bool invalid = false;
};

/// Rule 2 for T_2 -> G_3, with the experimenter's nodes intervened on the actual network.
CrossDomainReport run_front_door_experiment(Execution exec = Execution::Parallel);

/// Rule 2 for T_2 -> G_3 on the modeled network, once through an instrument that leaks into
/// G_3 and once with clean interventions.
CrossDomainReport run_back_door_experiment(Execution exec = Execution::Parallel);

struct EnforcementArm {
  std::string label;
  std::string enforcement_a;
  std::string enforcement_b;
  std::string event;
  Rational p_a;
  Rational p_b;
  bool verdict = false;  // the two enforcements give different effect marginals
};

/// The same epistemic enforcement (fixing parity) realised at two levels of the dice family.
std::vector<EnforcementArm> run_apriori_detection_demo(Execution exec = Execution::Parallel);

struct MarkovHarnessReport {
  std::uint64_t seed = 0;
  std::size_t models = 0;
  std::size_t triples = 0;
  std::size_t violations = 0;
  std::vector<std::uint64_t> failing_seeds;
};

/// d-separation implies conditional independence on `count` random models seeded from `seed`.
MarkovHarnessReport run_markov_harness(std::uint64_t seed, std::size_t count);

nlohmann::ordered_json to_json(const CrossDomainReport& r);
nlohmann::ordered_json to_json(const std::vector<EnforcementArm>& arms);
nlohmann::ordered_json to_json(const MarkovHarnessReport& r);

} // namespace scm
