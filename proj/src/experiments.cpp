#include "scm/experiments.hpp"

#include "scm/distribution.hpp"
#include "scm/faithfulness.hpp"
#include "scm/random_scm.hpp"
#include "scm/scenarios.hpp"
#include "scm/solver.hpp"

namespace scm {

namespace {

std::vector<NodeId> ids(const Scm& scm, std::initializer_list<const char*> names) {
  std::vector<NodeId> out;
  for (const char* n : names)
    out.push_back(scm.id(n));
  return out;
}

Rational probability_of(const Distribution& d, NodeId n, ValueIndex v) { return d.probability(Event::equals(n, v)); }

} // namespace

CrossDomainReport run_front_door_experiment(Execution exec) {
  const Scm actual = scenario_scm("grn_actual");
  const NodeId t2 = actual.id("T_2");
  const NodeId g3 = actual.id("G_3");
  const NodeId g4 = actual.id("G_4");

  DetectionOptions opts;
  opts.observed = ids(actual, {"G_1", "T_2", "G_2", "T_3", "G_3"});
  opts.exec = exec;
  DetectionReport detected = detect_direct_cause(actual, t2, g3, opts);

  const Distribution joint = joint_distribution(actual, exec);
  const Rational g4_zero = probability_of(joint, g4, actual.value_index(g4, "0"));
  const bool screened = cond_independent(joint, {g3}, {t2}, {actual.id("T_3")});

  nlohmann::ordered_json natural;
  natural["P(G_4=0)"] = format_rational(g4_zero);
  natural["G_3 independent of T_2 given T_3"] = screened;

  const bool invalid = detected.verdict && g4_zero == 1 && screened;
  return CrossDomainReport{"front_door", actual, t2, g3, std::move(detected), std::nullopt, natural, invalid};
}

CrossDomainReport run_back_door_experiment(Execution exec) {
  const Scm clean = scenario_scm("grn_modeled");
  const NodeId t2 = clean.id("T_2");
  const NodeId g3 = clean.id("G_3");

  // the complex is present whenever T_2 is forced on and flips G_3 through a side channel
  DetectionOptions leaky;
  leaky.exec = exec;
  leaky.intervener = instrumented_intervener(t2, {Leak{g3, {{0, 1}, {1, 0}}}}, "complex");
  DetectionReport instrumented = detect_direct_cause(clean, t2, g3, leaky);

  DetectionOptions plain;
  plain.exec = exec;
  DetectionReport control = detect_direct_cause(clean, t2, g3, plain);

  nlohmann::ordered_json natural;
  natural["edge T_2->G_3 in model"] = clean.graph().has_edge(t2, g3);
  natural["control verdict"] = control.verdict;

  const bool invalid = instrumented.verdict && !control.verdict && !clean.graph().has_edge(t2, g3);
  return CrossDomainReport{"back_door", clean, t2, g3, std::move(instrumented), std::move(control), natural, invalid};
}

std::vector<EnforcementArm> run_apriori_detection_demo(Execution exec) {
  std::vector<EnforcementArm> arms;

  // mechanism level: replace Y's mechanism on the two-node cycle
  {
    const Scm cyc = scenario_scm("dice_yz_cyclic");
    const NodeId y = cyc.id("Y");
    const NodeId z = cyc.id("Z");
    const ValueIndex low = cyc.value_index(z, "≤3");
    const Distribution odd = do_distribution(cyc, InterventionSpec{{{y, cyc.value_index(y, "odd")}}}, exec);
    const Distribution even = do_distribution(cyc, InterventionSpec{{{y, cyc.value_index(y, "even")}}}, exec);
    DetectionOptions opts;
    opts.exec = exec;
    const DetectionReport r = detect_cause(cyc, y, z, opts);
    arms.push_back({"mechanism", "do(Y=odd)", "do(Y=even)", "Z=≤3", probability_of(odd, z, low),
                    probability_of(even, z, low), r.verdict});
  }

  // die level: force X into a set of faces, uniformly
  const Scm dice = scenario_scm("dice_xyz");
  const NodeId x = dice.id("X");
  const NodeId z = dice.id("Z");
  const ValueIndex low = dice.value_index(z, "≤3");
  auto uniform = [&](std::initializer_list<const char*> faces) {
    std::vector<std::pair<ValueIndex, Rational>> w;
    for (const char* f : faces)
      w.emplace_back(dice.value_index(x, f), Rational(1, static_cast<long>(faces.size())));
    return mixed_do(dice, x, w, exec);
  };
  auto arm = [&](std::string label, std::string a, std::string b, const Distribution& da, const Distribution& db) {
    bool differs = false;
    for (std::size_t v = 0; v < dice.space(z).size(); ++v)
      differs |= probability_of(da, z, static_cast<ValueIndex>(v)) != probability_of(db, z, static_cast<ValueIndex>(v));
    arms.push_back({std::move(label), std::move(a), std::move(b), "Z=≤3", probability_of(da, z, low),
                    probability_of(db, z, low), differs});
  };
  const Distribution odd15 = uniform({"1", "5"});
  arm("die", "do(X∈{1,5})", "do(X∈{2,6})", odd15, uniform({"2", "6"}));
  arm("die_skewed", "do(X∈{1,3})", "do(X∈{2,6})", uniform({"1", "3"}), uniform({"2", "6"}));
  return arms;
}

MarkovHarnessReport run_markov_harness(std::uint64_t seed, std::size_t count) {
  MarkovHarnessReport r;
  r.seed = seed;
  AuditOptions opts;
  opts.exhaustive = true;
  opts.exec = Execution::Serial;
  for (std::size_t k = 0; k < count; ++k) {
    const Scm m = random_scm(seed + k);
    r.triples += enumerate_triples(m, opts).size();
    const auto bad = markov_violations(m, opts);
    if (!bad.empty()) {
      r.violations += bad.size();
      r.failing_seeds.push_back(seed + k);
    }
    ++r.models;
  }
  return r;
}

nlohmann::ordered_json to_json(const CrossDomainReport& r) {
  nlohmann::ordered_json j;
  j["kind"] = r.kind;
  j["pair"] = nlohmann::ordered_json::array({r.model.name(r.cause), r.model.name(r.effect)});
  j["interventional"] = to_json(r.interventional, r.model);
  if (r.control)
    j["control"] = to_json(*r.control, r.model);
  j["natural"] = r.natural;
  j["invalid"] = r.invalid;
  return j;
}

nlohmann::ordered_json to_json(const std::vector<EnforcementArm>& arms) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& a : arms) {
    nlohmann::ordered_json j;
    j["arm"] = a.label;
    j["a"] = a.enforcement_a;
    j["b"] = a.enforcement_b;
    j["event"] = a.event;
    j["p_a"] = format_rational(a.p_a);
    j["p_b"] = format_rational(a.p_b);
    j["verdict"] = a.verdict;
    out.push_back(j);
  }
  return out;
}

nlohmann::ordered_json to_json(const MarkovHarnessReport& r) {
  nlohmann::ordered_json j;
  j["seed"] = r.seed;
  j["models"] = r.models;
  j["triples"] = r.triples;
  j["violations"] = r.violations;
  j["failing_seeds"] = r.failing_seeds;
  return j;
}

} // namespace scm
