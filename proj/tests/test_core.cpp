#include "support.hpp"

#include "scm/error.hpp"
#include "scm/expression.hpp"

using namespace scm;
using support::q;

namespace {

bool has_violation(const ValidationReport& r, const std::string& code) {
  for (const auto& v : r.violations)
    if (v.code == code)
      return true;
  return false;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ScmError& e) {
    return e.code();
  }
  FAIL("expected an ScmError");
  return ErrorCode::Parse;
}

const char* kTiny = R"({
  "spaces": {"bit": [0, 1]},
  "exogenous": {"E": {"space": "bit", "measure": {"0": "1/4", "1": "3/4"}}},
  "endogenous": {"X": {"space": "bit", "parents": ["E"], "expr": "1 - E"}}
})";

} // namespace

TEST_SUITE("core") {

TEST_CASE("rationals parse and print as p/q") {
  CHECK(parse_rational("2/4") == q(1, 2));
  CHECK(parse_rational("-3") == q(-3));
  CHECK(format_rational(q(1)) == "1/1");
  CHECK(format_rational(q(6, 4)) == "3/2");
  CHECK(format_numeric_token(q(4, 2)) == "2");
  CHECK_FALSE(try_parse_rational("1/0"));
  CHECK_FALSE(try_parse_rational("odd"));
  CHECK(code_of([] { parse_rational("x/2"); }) == ErrorCode::Parse);
}

TEST_CASE("expressions tabulate over parent spaces") {
  const OutcomeSpace die("die", {make_value("1"), make_value("2"), make_value("3"), make_value("4")});
  const OutcomeSpace parity("parity", {make_value("odd"), make_value("even")});
  const auto rows = tabulate(Expression::parse(R"(X % 2 == 1 ? "odd" : "even")"), {{"X", die}}, parity);
  CHECK(rows == std::vector<ValueIndex>{0, 1, 0, 1});

  const OutcomeSpace small("small", {make_value("0"), make_value("1"), make_value("2")});
  CHECK(tabulate(Expression::parse("min(X, 2)"), {{"X", die}}, small) == std::vector<ValueIndex>{1, 2, 2, 2});
  CHECK(tabulate(Expression::parse("X in {2, 4} ? 1 : 0"), {{"X", die}}, small) == std::vector<ValueIndex>{0, 1, 0, 1});
  CHECK(tabulate(Expression::parse("not (X > 2) and X != 1"), {{"X", die}}, small) ==
        std::vector<ValueIndex>{0, 1, 0, 0});
  CHECK(code_of([&] { tabulate(Expression::parse("X + 5"), {{"X", die}}, small); }) == ErrorCode::Parse);
  CHECK(code_of([] { Expression::parse("(1 + "); }) == ErrorCode::Parse);
  CHECK(Expression::parse("A + B * A").identifiers() == std::set<std::string>{"A", "B"});
}

TEST_CASE("a small document builds and evaluates") {
  const Scm m = support::doc(kTiny);
  CHECK(m.endo_count() == 1);
  CHECK(m.exo_count() == 1);
  CHECK(m.acyclic());
  CHECK(m.mechanism(0).rows == std::vector<ValueIndex>{1, 0});
  CHECK(m.exo_probability(std::vector<ValueIndex>{1}) == q(3, 4));
  CHECK(m.id("E") == NodeId::exo(0));
  CHECK(code_of([&] { m.id("nope"); }) == ErrorCode::UnknownNode);
  CHECK(code_of([&] { m.value_index(m.id("X"), "7"); }) == ErrorCode::UnknownNode);
}

TEST_CASE("structural problems are parse errors") {
  auto broken = [](const std::string& text) {
    return code_of([&] { parse_document(parse_json_text(text)); });
  };
  CHECK(broken("{") == ErrorCode::Parse);
  CHECK(broken(R"({"spaces": {}, "exogenous": {}, "endogenous": {}, "extra": 1})") == ErrorCode::Parse);
  CHECK(broken(R"({"spaces": {"b": [0]}, "exogenous": {}, "endogenous": {"X": {"space": "b", "parents": ["Q"], "expr": "0"}}})") ==
        ErrorCode::Parse);
  CHECK(broken(R"({"spaces": {"b": [0]}, "exogenous": {"E": {"space": "b", "measure": {"0": 1}}}, "endogenous": {}})") ==
        ErrorCode::Parse);
  CHECK(broken(R"({"spaces": {"b": [0]}, "exogenous": {}, "endogenous": {"X": {"space": "b", "expr": "0", "table": []}}})") ==
        ErrorCode::Parse);
}

TEST_CASE("validate reports semantic violations") {
  const Scm partial(parse_document(parse_json_text(R"({
    "spaces": {"bit": [0, 1]},
    "exogenous": {"E": {"space": "bit", "measure": {"0": "1/3", "1": "1/3"}}},
    "endogenous": {"X": {"space": "bit", "parents": ["E"], "table": [[[0], 1]]}}
  })")));
  const auto report = validate(partial);
  CHECK_FALSE(report.ok());
  CHECK(has_violation(report, "non-total"));
  CHECK(has_violation(report, "measure-sum"));

  const Scm backwards(parse_document(parse_json_text(R"({
    "spaces": {"bit": [0, 1]},
    "exogenous": {"E": {"space": "bit", "measure": {"0": "1/2", "1": "1/2"}, "parents": ["X"]}},
    "endogenous": {"X": {"space": "bit", "expr": "0"}}
  })")));
  CHECK(has_violation(validate(backwards), "edge-into-exogenous"));

  CHECK(code_of([] {
          build_scm(parse_json_text(R"({"spaces": {"bit": [0, 1]}, "exogenous": {"E": {"space": "bit", "measure": {"0": "1/2"}}}, "endogenous": {}})"));
        }) == ErrorCode::Validation);
}

TEST_CASE("every catalog document validates and round-trips") {
  CHECK(catalog().size() >= 10);
  for (const auto& s : catalog()) {
    CAPTURE(s.name);
    const Scm m = build_scm(s.document);
    CHECK(validate(m).ok());
    const Json once = serialize(m);
    const Scm again = build_scm(once);
    CHECK(again.same_model(m));
    CHECK(dump_canonical(serialize(again)) == dump_canonical(once));
  }
}

} // TEST_SUITE
