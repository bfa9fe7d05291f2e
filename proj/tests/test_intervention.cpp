#include "support.hpp"

#include "scm/error.hpp"
#include "scm/intervention.hpp"
#include "scm/solver.hpp"

using namespace scm;
using support::prob;
using support::q;

namespace {

InterventionSpec spec(const Scm& m, std::initializer_list<std::pair<const char*, const char*>> values) {
  InterventionSpec s;
  for (auto [name, token] : values) {
    const NodeId n = m.id(name);
    s.targets.emplace_back(n, m.value_index(n, token));
  }
  return s;
}

std::map<std::size_t, int> pins(const InterventionSpec& s) {
  std::map<std::size_t, int> out;
  for (auto [n, v] : s.targets)
    out[n.index] = v;
  return out;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ScmError& e) {
    return e.code();
  }
  FAIL("no ScmError thrown");
  return ErrorCode::Parse;
}

} // namespace

TEST_SUITE("intervention") {

TEST_CASE("do on the cyclic dice") {
  const Scm m = scenario_scm("dice_yz_cyclic");
  const auto odd = do_distribution(m, spec(m, {{"Y", "odd"}}));
  const auto even = do_distribution(m, spec(m, {{"Y", "even"}}));
  CHECK(prob(odd, m, "Z", "≤3") == q(2, 3));
  CHECK(prob(even, m, "Z", "≤3") == q(1, 3));
  CHECK(support::same_as_oracle(odd, oracle::joint(m, pins(spec(m, {{"Y", "odd"}})))));
  CHECK(support::same_as_oracle(even, oracle::joint(m, pins(spec(m, {{"Y", "even"}})))));
}

TEST_CASE("surgery cuts incoming edges only") {
  const Scm m = scenario_scm("dice_xyz");
  const Scm d = do_transform(m, spec(m, {{"Y", "odd"}}));
  CHECK(parents(d.graph(), m.id("Y")).empty());
  CHECK(d.graph().has_edge(m.id("E"), m.id("X")));
  CHECK(d.mechanism(m.id("Y").index).rows == std::vector<ValueIndex>{m.value_index(m.id("Y"), "odd")});
  CHECK(d.mechanism(m.id("Z").index).rows == m.mechanism(m.id("Z").index).rows);
  CHECK(do_transform(m, {}).graph() == m.graph());
}

TEST_CASE("do matches the oracle on every scenario and single target") {
  for (const auto& s : catalog()) {
    const Scm m = build_scm(s.document);
    for (NodeId n : m.endogenous_ids())
      for (std::size_t v = 0; v < m.space(n).size(); ++v) {
        CAPTURE(s.name);
        CAPTURE(m.name(n));
        const InterventionSpec one{{{n, static_cast<ValueIndex>(v)}}};
        oracle::Joint expected;
        try {
          expected = oracle::joint(m, pins(one));
        } catch (const std::runtime_error&) {
          CHECK_THROWS_AS(do_distribution(m, one), ScmError);
          continue;
        }
        CHECK(support::same_as_oracle(do_distribution(m, one), expected));
      }
  }
}

TEST_CASE("bad targets") {
  const Scm m = scenario_scm("dice_xyz");
  CHECK(code_of([&] { do_transform(m, InterventionSpec{{{m.id("E"), 0}}}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { do_transform(m, InterventionSpec{{{m.id("X"), 0}, {m.id("X"), 1}}}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([&] { do_transform(m, InterventionSpec{{{m.id("X"), 6}}}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("mixed do") {
  const Scm m = scenario_scm("dice_xyz");
  const NodeId x = m.id("X");
  auto faces = [&](const char* a, const char* b) {
    return std::vector<std::pair<ValueIndex, Rational>>{{m.value_index(x, a), q(1, 2)}, {m.value_index(x, b), q(1, 2)}};
  };
  CHECK(prob(mixed_do(m, x, faces("1", "5")), m, "Z", "≤3") == q(1, 2));
  CHECK(prob(mixed_do(m, x, faces("2", "6")), m, "Z", "≤3") == q(1, 2));
  CHECK(prob(mixed_do(m, x, faces("1", "3")), m, "Z", "≤3") == 1);
  CHECK(prob(mixed_do(m, x, faces("1", "5")), m, "Y", "odd") == 1);
  CHECK(mixed_do(m, x, {{0, q(1)}}) == do_distribution(m, InterventionSpec{{{x, 0}}}));
  CHECK(code_of([&] { mixed_do(m, x, {{0, q(1, 2)}}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { mixed_do(m, x, {{0, q(3, 2)}, {1, q(-1, 2)}}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("rule 1 and rule 2 on the die") {
  const Scm m = scenario_scm("dice_xyz");
  const NodeId x = m.id("X"), y = m.id("Y"), z = m.id("Z");
  CHECK(detect_cause(m, x, z).verdict);
  CHECK(detect_cause(m, x, y).verdict);
  CHECK_FALSE(detect_cause(m, y, z).verdict);
  CHECK_FALSE(detect_cause(m, z, x).verdict);
  CHECK(detect_direct_cause(m, x, z).verdict);
  CHECK_FALSE(detect_direct_cause(m, y, z).verdict);

  const auto r = detect_cause(m, x, z);
  REQUIRE(r.witness);
  CHECK(r.rule == Rule::First);
  CHECK(r.witness->a == spec(m, {{"X", "1"}}));
  CHECK(r.witness->b == spec(m, {{"X", "4"}}));
  CHECK(r.witness->p_a != r.witness->p_b);
}

TEST_CASE("rule 2 on the cyclic dice") {
  const Scm m = scenario_scm("dice_yz_cyclic");
  CHECK(detect_direct_cause(m, m.id("Y"), m.id("Z")).verdict);
  CHECK(detect_direct_cause(m, m.id("Z"), m.id("Y")).verdict);
  CHECK(detect_cause(m, m.id("Y"), m.id("Z")).verdict);
}

TEST_CASE("serial and parallel detection agree") {
  const Scm m = scenario_scm("grn_actual_noisy");
  DetectionOptions serial, parallel;
  serial.exec = Execution::Serial;
  for (NodeId i : m.endogenous_ids())
    for (NodeId j : m.endogenous_ids()) {
      if (i == j)
        continue;
      const auto a = detect_direct_cause(m, i, j, serial);
      const auto b = detect_direct_cause(m, i, j, parallel);
      CHECK(to_json(a, m) == to_json(b, m));
    }
}

TEST_CASE("discovery recovers the endogenous graph of acyclic scenarios") {
  for (const char* name : {"dice_xyz", "grn_modeled", "copy_pair", "water_blood"}) {
    CAPTURE(name);
    const Scm m = scenario_scm(name);
    const CausalGraph g = discover_graph(m);
    for (NodeId i : m.endogenous_ids())
      for (NodeId j : m.endogenous_ids())
        if (i != j && m.graph().has_edge(i, j))
          CHECK(g.has_edge(i, j));
  }
}

TEST_CASE("context cap") {
  const Scm m = scenario_scm("grn_actual");
  DetectionOptions opts;
  opts.context_cap = 2;
  const auto r = detect_direct_cause(m, m.id("G_1"), m.id("T_4"), opts);
  CHECK(r.contexts_checked <= 2);
  CHECK(r.contexts_total > 2);
  CHECK_FALSE(r.exhaustive);
  opts.exhaustive = true;
  const auto full = detect_direct_cause(m, m.id("G_1"), m.id("T_4"), opts);
  CHECK(full.exhaustive);
  CHECK(full.contexts_checked == full.contexts_total);
}

TEST_CASE("consistency of interventions") {
  const Scm m = scenario_scm("dice_xyz");
  CHECK(intervention_consistent(m, m.id("X"), 0, m.id("Z")).consistent);
  CHECK(intervention_consistent(m, m.id("X"), 0, m.id("Y")).consistent);
  const auto back = intervention_consistent(m, m.id("Z"), 0, m.id("X"));
  CHECK_FALSE(back.consistent);
  REQUIRE(back.value);
  CHECK(back.p_do == q(1, 6));
  CHECK(back.p_cond == q(1, 3));
}

TEST_CASE("symmetric pair is detected both ways and stays consistent") {
  const Scm m = scenario_scm("symmetric_pair");
  const auto r = symmetric_detection_check(m, m.id("X"), m.id("Y"), {});
  CHECK(r.i_to_j);
  CHECK(r.j_to_i);
  CHECK(r.i_consistent);
  CHECK(r.j_consistent);
  CHECK(r.biconditional);
}

TEST_CASE("copy pair breaks the biconditional") {
  const Scm m = scenario_scm("copy_pair");
  const auto r = symmetric_detection_check(m, m.id("X"), m.id("Y"), {});
  CHECK(r.i_to_j);
  CHECK_FALSE(r.j_to_i);
  CHECK(r.i_consistent);
  CHECK_FALSE(r.j_consistent);
  CHECK_FALSE(r.biconditional);
}

TEST_CASE("context must fix the remaining nodes") {
  const Scm m = scenario_scm("dice_xyz");
  CHECK_THROWS_AS(symmetric_detection_check(m, m.id("Y"), m.id("Z"), {}), ScmError);
  const auto r = symmetric_detection_check(m, m.id("Y"), m.id("Z"), spec(m, {{"X", "2"}}));
  CHECK_FALSE(r.i_to_j);
  CHECK_FALSE(r.j_to_i);
  CHECK(r.biconditional);
}

TEST_CASE("instrumented interventions") {
  const Scm m = scenario_scm("grn_modeled");
  const NodeId t2 = m.id("T_2"), g3 = m.id("G_3");
  const Scm plain = instrumented_do(m, t2, 1, {});
  CHECK(plain.graph() == do_transform(m, InterventionSpec{{{t2, 1}}}).graph());
  CHECK(joint_distribution(plain) == do_distribution(m, InterventionSpec{{{t2, 1}}}));

  const Scm leaky = instrumented_do(m, t2, 1, {Leak{g3, {{0, 1}, {1, 0}}}});
  CHECK(leaky.endo_count() == m.endo_count() + 1);
  const NodeId inst = leaky.id("instrument");
  CHECK(leaky.graph().has_edge(inst, g3));
  CHECK(parents(leaky.graph(), t2).empty());

  CHECK(code_of([&] { instrumented_do(m, t2, 1, {Leak{t2, {{0, 1}, {1, 0}}}}); }) == ErrorCode::MalformedLeak);
  CHECK(code_of([&] { instrumented_do(m, t2, 1, {Leak{g3, {{0, 1}}}}); }) == ErrorCode::MalformedLeak);
  CHECK(code_of([&] { instrumented_do(m, t2, 1, {Leak{g3, {{0, 1}, {1, 2}}}}); }) == ErrorCode::MalformedLeak);
  CHECK(code_of([&] {
          instrumented_do(m, t2, 1, {Leak{g3, {{0, 1}, {1, 0}}}, Leak{g3, {{0, 1}, {1, 0}}}});
        }) == ErrorCode::MalformedLeak);
}

} // TEST_SUITE
