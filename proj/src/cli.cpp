#include "scm/cli.hpp"

#include "scm/apriori.hpp"
#include "scm/document.hpp"
#include "scm/error.hpp"
#include "scm/experiments.hpp"
#include "scm/faithfulness.hpp"
#include "scm/intervention.hpp"
#include "scm/scenarios.hpp"
#include "scm/solver.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace scm {

namespace {

struct Flags {
  std::string file;
  std::string scenario;
  std::string format = "json";
  std::string set;
  std::string exo;
  std::string marginal;
  std::string event;
  std::string given;
  std::string module;
  std::string from;
  std::string to;
  std::string observe;
  std::string weights;
  std::string a, b, c;
  std::string anchor;
  std::string victim;
  std::string other;
  std::string reverse;
  std::string write;
  std::string target;
  std::size_t cap = 10000;
  bool exhaustive = false;
  std::uint64_t seed = 1;
  std::size_t count = 100;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  if (text.empty())
    return out;
  std::string item;
  std::stringstream in(text);
  while (std::getline(in, item, sep))
    out.push_back(item);
  return out;
}

std::pair<std::string, std::string> split_assignment(const std::string& item) {
  const auto eq = item.find('=');
  if (eq == std::string::npos || eq == 0)
    throw UsageError("expected NODE=VALUE, got \"" + item + "\"");
  return {item.substr(0, eq), item.substr(eq + 1)};
}

InterventionSpec parse_spec(const Scm& scm, const std::string& text) {
  InterventionSpec spec;
  for (const auto& item : split(text, ',')) {
    const auto [name, value] = split_assignment(item);
    const NodeId n = scm.id(name);
    spec.targets.emplace_back(n, scm.value_index(n, value));
  }
  return spec;
}

NodeSet parse_nodes(const Scm& scm, const std::string& text) {
  NodeSet out;
  for (const auto& name : split(text, ','))
    out.insert(scm.id(name));
  return out;
}

Scm load_model(const Flags& f) {
  if (!f.scenario.empty())
    return scenario_scm(f.scenario);
  if (f.file.empty())
    throw UsageError("a model is required: pass --file PATH or --scenario NAME");
  return load_scm(f.file);
}

NodeId required_node(const Scm& scm, const std::string& name, const char* flag) {
  if (name.empty())
    throw UsageError(std::string("missing ") + flag);
  return scm.id(name);
}

Json marginal_json(const Distribution& d, const Scm& scm, const std::string& marginal) {
  if (marginal.empty())
    return to_json(d, scm);
  return to_json(scm::marginal(d, parse_nodes(scm, marginal)), scm);
}

// Indented key: value lines for --format text.
void render_text(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !v.empty()) {
        out << pad << k << ":\n";
        render_text(v, out, indent + 1);
      } else {
        out << pad << k << ": " << (v.is_structured() ? v.dump() : scalar(v)) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_structured() && !v.empty()) {
        out << pad << "-\n";
        render_text(v, out, indent + 1);
      } else {
        out << pad << "- " << scalar(v) << "\n";
      }
    }
  } else {
    out << pad << scalar(j) << "\n";
  }
}

void emit(const Json& j, const Flags& f, std::ostream& out) {
  if (f.format == "text")
    render_text(j, out, 0);
  else
    out << dump_canonical(j);
}

DetectionOptions detection_options(const Scm& scm, const Flags& f) {
  DetectionOptions opts;
  for (NodeId n : parse_nodes(scm, f.observe))
    opts.observed.push_back(n);
  opts.context_cap = f.cap;
  opts.exhaustive = f.exhaustive;
  return opts;
}

Json scenario_summary(const Scenario& s) {
  Json j;
  j["name"] = s.name;
  j["notes"] = s.notes;
  const Scm m = build_scm(s.document);
  j["acyclic"] = m.acyclic();
  j["simple"] = is_simple(m, 0).simple;
  try {
    j["joint"] = to_json(joint_distribution(m), m);
  } catch (const ScmError& e) {
    j["joint"] = e.to_json();
  }
  return j;
}

int run_verb(const std::string& verb, const Flags& f, std::ostream& out) {
  if (verb == "validate") {
    std::string text;
    if (!f.scenario.empty()) {
      text = find_scenario(f.scenario).document.dump();
    } else {
      if (f.file.empty())
        throw UsageError("a model is required: pass --file PATH or --scenario NAME");
      std::ifstream in(f.file);
      if (!in)
        throw ScmError(ErrorCode::Parse, "cannot read " + f.file);
      std::stringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    }
    const Scm m(parse_document(parse_json_text(text)));
    const auto report = validate(m);
    emit(to_json(report), f, out);
    return report.ok() ? 0 : 1;
  }

  if (verb == "catalog") {
    Json list = Json::array();
    for (const auto& s : catalog()) {
      list.push_back(Json{{"name", s.name}, {"notes", s.notes}});
      if (!f.write.empty()) {
        std::filesystem::create_directories(f.write);
        std::ofstream file(std::filesystem::path(f.write) / (s.name + ".json"));
        file << dump_canonical(serialize(build_scm(s.document)));
      }
    }
    emit(list, f, out);
    return 0;
  }

  if (verb == "demo") {
    if (f.target == "front-door") {
      emit(to_json(run_front_door_experiment()), f, out);
    } else if (f.target == "back-door") {
      emit(to_json(run_back_door_experiment()), f, out);
    } else if (f.target == "apriori-detection") {
      emit(to_json(run_apriori_detection_demo()), f, out);
    } else if (f.target == "markov") {
      emit(to_json(run_markov_harness(f.seed, f.count)), f, out);
    } else if (!f.target.empty()) {
      emit(scenario_summary(find_scenario(f.target)), f, out);
    } else {
      throw UsageError("demo needs a scenario name or one of front-door, back-door, apriori-detection, markov");
    }
    return 0;
  }

  const Scm m = load_model(f);

  if (verb == "solve") {
    std::vector<ValueIndex> e(m.exo_count(), -1);
    for (const auto& item : split(f.exo, ',')) {
      const auto [name, value] = split_assignment(item);
      const NodeId n = m.id(name);
      if (!n.is_exogenous())
        throw UsageError("--exo takes exogenous nodes, got " + name);
      e[n.index] = m.value_index(n, value);
    }
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k] < 0)
        throw UsageError("--exo must assign every exogenous node, missing " + m.exogenous()[k].name);
    const auto s = solve(m, e);
    if (s.solutions.empty())
      throw ScmError(ErrorCode::NoSolution, "structural equations have no solution for this exogenous assignment",
                     to_json(s, m));
    emit(to_json(s, m), f, out);
    return 0;
  }
  if (verb == "joint") {
    emit(marginal_json(joint_distribution(m), m, f.marginal), f, out);
    return 0;
  }
  if (verb == "conditional") {
    if (f.event.empty())
      throw UsageError("missing --event");
    const Distribution d = f.set.empty() ? joint_distribution(m) : do_distribution(m, parse_spec(m, f.set));
    const Event ev = parse_event(m, f.event);
    const Event given = f.given.empty() ? Event::always() : parse_event(m, f.given);
    Json j;
    j["event"] = f.event;
    if (!f.given.empty())
      j["given"] = f.given;
    if (!f.set.empty())
      j["do"] = to_json(parse_spec(m, f.set), m);
    j["probability"] = format_rational(conditional(d, ev, given));
    emit(j, f, out);
    return 0;
  }
  if (verb == "do") {
    if (f.set.empty())
      throw UsageError("missing --set");
    emit(marginal_json(do_distribution(m, parse_spec(m, f.set)), m, f.marginal), f, out);
    return 0;
  }
  if (verb == "mixed-do") {
    const auto items = split(f.set, ',');
    if (items.size() != 1)
      throw UsageError("mixed-do takes a single --set NODE=V1|V2|...");
    const auto [name, values] = split_assignment(items[0]);
    const NodeId n = m.id(name);
    const auto vals = split(values, '|');
    const auto ws = split(f.weights, ',');
    if (!ws.empty() && ws.size() != vals.size())
      throw UsageError("--weights needs one weight per value");
    std::vector<std::pair<ValueIndex, Rational>> w;
    for (std::size_t k = 0; k < vals.size(); ++k)
      w.emplace_back(m.value_index(n, vals[k]),
                     ws.empty() ? Rational(1, static_cast<long>(vals.size())) : parse_rational(ws[k]));
    emit(marginal_json(mixed_do(m, n, w), m, f.marginal), f, out);
    return 0;
  }
  if (verb == "detect" || verb == "detect-direct") {
    const NodeId i = required_node(m, f.from, "--from");
    const NodeId j = required_node(m, f.to, "--to");
    const auto opts = detection_options(m, f);
    emit(to_json(verb == "detect" ? detect_cause(m, i, j, opts) : detect_direct_cause(m, i, j, opts), m), f, out);
    return 0;
  }
  if (verb == "discover") {
    const CausalGraph g = discover_graph(m, detection_options(m, f));
    Json edges = Json::array();
    for (const auto& [a, b] : g.edges())
      edges.push_back(m.name(a) + "->" + m.name(b));
    emit(Json{{"edges", edges}}, f, out);
    return 0;
  }
  if (verb == "consistent") {
    const auto spec = parse_spec(m, f.set);
    if (spec.targets.size() != 1)
      throw UsageError("consistent takes a single --set NODE=VALUE");
    const NodeId j = required_node(m, f.to, "--to");
    emit(to_json(intervention_consistent(m, spec.targets[0].first, spec.targets[0].second, j), m, j), f, out);
    return 0;
  }
  if (verb == "faithfulness") {
    AuditOptions opts;
    opts.exhaustive = f.exhaustive;
    const auto w = faithfulness_audit(m, opts);
    emit(Json{{"faithful", w.empty()}, {"witnesses", to_json(w, m)}}, f, out);
    return 0;
  }
  if (verb == "d-sep") {
    if (f.a.empty() || f.b.empty())
      throw UsageError("d-sep needs --a and --b");
    const bool sep = d_separated(m.graph(), parse_nodes(m, f.a), parse_nodes(m, f.b), parse_nodes(m, f.c));
    emit(Json{{"d_separated", sep}}, f, out);
    return 0;
  }
  if (verb == "ap-module") {
    const NodeId anchor = required_node(m, f.anchor, "--anchor");
    const auto mod = ap_module(m, anchor);
    Json j = to_json(mod, m);
    const auto cls = classify_edges(m.graph(), mod.members);
    auto edges = [&](const EdgeSet& s) {
      Json arr = Json::array();
      for (const auto& [a, b] : s)
        arr.push_back(m.name(a) + "->" + m.name(b));
      return arr;
    };
    j["interior"] = edges(cls.interior);
    j["exterior"] = edges(cls.exterior);
    j["incoming"] = edges(cls.incoming);
    j["outgoing"] = edges(cls.outgoing);
    emit(j, f, out);
    return 0;
  }
  if (verb == "marginalize") {
    emit(serialize(marginalize(m, required_node(m, f.victim, "--victim"))), f, out);
    return 0;
  }
  if (verb == "equiv") {
    if (f.other.empty())
      throw UsageError("equiv needs --other FILE or --other scenario:NAME");
    const Scm other = f.other.starts_with("scenario:") ? scenario_scm(f.other.substr(9)) : load_scm(f.other);
    if (f.module.empty())
      throw UsageError("equiv needs --module");
    emit(to_json(causally_equivalent(m, other, parse_nodes(m, f.module))), f, out);
    return 0;
  }
  if (verb == "remodel") {
    std::vector<Edge> edges;
    for (const auto& item : split(f.reverse, ',')) {
      const auto arrow = item.find("->");
      if (arrow == std::string::npos)
        throw UsageError("--reverse takes FROM->TO pairs, got \"" + item + "\"");
      edges.emplace_back(m.id(item.substr(0, arrow)), m.id(item.substr(arrow + 2)));
    }
    emit(serialize(reverse_edge_remodel(m, edges)), f, out);
    return 0;
  }
  throw UsageError("unknown verb " + verb);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
  case ErrorCode::Parse:
  case ErrorCode::Validation:
  case ErrorCode::UnknownNode:
    return 1;
  default:
    return 2;
  }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Exact structural causal model engine", "scm"};
  app.require_subcommand(1);

  auto model_flags = [&](CLI::App* sub) {
    sub->add_option("--file", f.file, "ScmDocument path");
    sub->add_option("--scenario", f.scenario, "built-in scenario name");
    sub->add_option("--format", f.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };
  auto verb = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    model_flags(sub);
    return sub;
  };

  verb("validate", "check a document");
  verb("solve", "solutions for one exogenous assignment")->add_option("--exo", f.exo, "E=v,...");
  verb("joint", "joint distribution")->add_option("--marginal", f.marginal, "nodes to keep");
  {
    auto* s = verb("conditional", "P(event | given), optionally under --set");
    s->add_option("--event", f.event);
    s->add_option("--given", f.given);
    s->add_option("--set", f.set);
  }
  {
    auto* s = verb("do", "post-intervention distribution");
    s->add_option("--set", f.set, "X=v,...");
    s->add_option("--marginal", f.marginal);
  }
  {
    auto* s = verb("mixed-do", "mixture of interventions on one node");
    s->add_option("--set", f.set, "X=v1|v2|...");
    s->add_option("--weights", f.weights, "p1,p2,... (uniform by default)");
    s->add_option("--marginal", f.marginal);
  }
  for (const char* name : {"detect", "detect-direct"}) {
    auto* s = verb(name, name == std::string("detect") ? "first rule of intervention" : "second rule of intervention");
    s->add_option("--from", f.from);
    s->add_option("--to", f.to);
    s->add_option("--observe", f.observe, "experimenter's nodes");
    s->add_option("--cap", f.cap, "context cap");
    s->add_flag("--exhaustive", f.exhaustive);
  }
  {
    auto* s = verb("discover", "pairwise second-rule graph");
    s->add_option("--observe", f.observe);
    s->add_option("--cap", f.cap);
    s->add_flag("--exhaustive", f.exhaustive);
  }
  {
    auto* s = verb("consistent", "do against conditioning for one value");
    s->add_option("--set", f.set, "X=v");
    s->add_option("--to", f.to);
  }
  verb("faithfulness", "independences the graph does not explain")->add_flag("--exhaustive", f.exhaustive);
  {
    auto* s = verb("d-sep", "d-separation query");
    s->add_option("--a", f.a);
    s->add_option("--b", f.b);
    s->add_option("--c", f.c);
  }
  verb("ap-module", "a-priori module and edge classes")->add_option("--anchor", f.anchor);
  verb("marginalize", "substitute a node away")->add_option("--victim", f.victim);
  {
    auto* s = verb("equiv", "causal equivalence of two models");
    s->add_option("--other", f.other);
    s->add_option("--module", f.module);
  }
  verb("remodel", "reverse edges around an a-priori module")->add_option("--reverse", f.reverse, "Y->X,...");
  {
    auto* s = app.add_subcommand("demo", "scenario summary or experiment");
    s->add_option("target", f.target, "scenario, front-door, back-door, apriori-detection or markov");
    s->add_option("--seed", f.seed);
    s->add_option("--count", f.count);
    s->add_option("--format", f.format)->check(CLI::IsMember({"json", "text"}));
  }
  {
    auto* s = app.add_subcommand("catalog", "list built-in scenarios");
    s->add_option("--write", f.write, "write canonical documents to DIR");
    s->add_option("--format", f.format)->check(CLI::IsMember({"json", "text"}));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << dump_canonical(Json{{"code", "USAGE"}, {"message", e.what()}});
    return 1;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return run_verb(name, f, out);
  } catch (const UsageError& e) {
    err << dump_canonical(Json{{"code", "USAGE"}, {"message", e.what()}});
    return 1;
  } catch (const ScmError& e) {
    err << dump_canonical(e.to_json());
    return exit_code_for(e.code());
  }
}

} // namespace scm
