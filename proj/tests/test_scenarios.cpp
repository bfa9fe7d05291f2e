#include "golden.hpp"
#include "support.hpp"

#include "scm/apriori.hpp"
#include "scm/error.hpp"
#include "scm/experiments.hpp"
#include "scm/solver.hpp"

using namespace scm;
using support::prob;
using support::q;

TEST_SUITE("scenarios") {

TEST_CASE("catalog files match the built-in documents") {
  for (const auto& s : catalog()) {
    CAPTURE(s.name);
    const auto path = std::filesystem::path(SCM_DATA_DIR) / "scenarios" / (s.name + ".json");
    REQUIRE(std::filesystem::exists(path));
    CHECK(load_scm(path).same_model(build_scm(s.document)));
  }
}

TEST_CASE("golden joints") {
  for (const auto& s : catalog()) {
    if (s.name == "dice_yz_cyclic")
      continue;
    CAPTURE(s.name);
    const Scm m = build_scm(s.document);
    golden::check(std::filesystem::path("joint") / (s.name + ".json"), dump_canonical(to_json(joint_distribution(m), m)));
  }
}

TEST_CASE("population size is the sum of two counts") {
  const Scm m = scenario_scm("population");
  const Distribution d = joint_distribution(m);
  CHECK(prob(d, m, "P", "0") == q(1, 9));
  CHECK(prob(d, m, "P", "2") == q(1, 3));
  CHECK(prob(d, m, "P", "4") == q(1, 9));
}

TEST_CASE("water and blood") {
  const Scm m = scenario_scm("water_blood");
  const Distribution d = joint_distribution(m);
  CHECK(conditional(d, parse_event(m, "A=1"), parse_event(m, "W=1")) == 1);
  CHECK(prob(d, m, "A", "0") == q(1, 2));
}

TEST_CASE("gene networks") {
  const Scm modeled = scenario_scm("grn_modeled");
  const Scm actual = scenario_scm("grn_actual");
  const Distribution dm = joint_distribution(modeled);
  const Distribution da = joint_distribution(actual);
  CHECK(prob(da, actual, "G_4", "0") == 1);
  CHECK(prob(da, actual, "T_4", "0") == 1);
  // with noise off T_2 copies G_1; T_2 represses G_2, so the rest of the chain negates it
  for (auto [n, on] : {std::pair{"T_2", "1"}, {"G_2", "0"}, {"T_3", "0"}, {"G_3", "0"}}) {
    CAPTURE(n);
    CHECK(prob(dm, modeled, n, "1") == q(1, 2));
    CHECK(conditional(dm, parse_event(modeled, std::string(n) + "=" + on), parse_event(modeled, "G_1=1")) == 1);
    CHECK(prob(da, actual, n, "1") == q(1, 2));
  }
  NodeSet g3{actual.id("G_3")}, t2{actual.id("T_2")}, t3{actual.id("T_3")};
  CHECK(cond_independent(da, g3, t2, t3));
  CHECK(d_separated(modeled.graph(), {modeled.id("G_3")}, {modeled.id("T_2")}, {modeled.id("T_3")}));
  CHECK_FALSE(d_separated(actual.graph(), g3, t2, t3));

  const Scm noisy = scenario_scm("grn_actual_noisy");
  const Distribution dn = joint_distribution(noisy);
  CHECK(prob(dn, noisy, "G_1", "1") == q(1, 2));
  CHECK(prob(dn, noisy, "G_4", "0") < 1);
}

TEST_CASE("front-door experiment") {
  const auto r = run_front_door_experiment();
  CHECK(r.invalid);
  CHECK(r.interventional.verdict);
  REQUIRE(r.interventional.witness);
  const Scm& m = r.model;
  auto tuple = [&](const InterventionSpec& s) {
    std::vector<std::string> out;
    for (auto [n, v] : s.targets)
      out.push_back(m.name(n) + "=" + m.space(n).at(v).token);
    return out;
  };
  CHECK(tuple(r.interventional.witness->a) == std::vector<std::string>{"G_1=0", "T_2=0", "G_2=0", "T_3=1"});
  CHECK(tuple(r.interventional.witness->b) == std::vector<std::string>{"G_1=0", "T_2=1", "G_2=0", "T_3=1"});
  CHECK(r.natural["P(G_4=0)"] == "1/1");
  CHECK(r.natural["G_3 independent of T_2 given T_3"] == true);
  CHECK(to_json(run_front_door_experiment(Execution::Serial)) == to_json(r));
}

TEST_CASE("back-door experiment") {
  const auto r = run_back_door_experiment();
  CHECK(r.interventional.verdict);
  REQUIRE(r.control);
  CHECK_FALSE(r.control->verdict);
  CHECK(r.invalid);
  CHECK_FALSE(r.model.graph().has_edge(r.cause, r.effect));
}

TEST_CASE("enforcement at the mechanism and at the die") {
  const auto arms = run_apriori_detection_demo();
  REQUIRE(arms.size() == 3);
  CHECK(arms[0].label == "mechanism");
  CHECK(arms[0].p_a == q(2, 3));
  CHECK(arms[0].p_b == q(1, 3));
  CHECK(arms[0].verdict);
  CHECK(arms[1].p_a == q(1, 2));
  CHECK(arms[1].p_b == q(1, 2));
  CHECK_FALSE(arms[1].verdict);
  CHECK(arms[2].verdict);
}

TEST_CASE("Markov harness") {
  const auto r = run_markov_harness(1, 30);
  CHECK(r.models == 30);
  CHECK(r.triples > 0);
  CHECK(r.violations == 0);
  CHECK(r.failing_seeds.empty());
}

} // TEST_SUITE
