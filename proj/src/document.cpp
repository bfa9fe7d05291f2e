#include "scm/document.hpp"

#include "scm/error.hpp"
#include "scm/expression.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace scm {

namespace {

[[noreturn]] void parse_fail(const std::string& message) { throw ScmError(ErrorCode::Parse, message); }

void check_keys(const Json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!obj.is_object())
    parse_fail(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed)
      ok |= key == a;
    if (!ok)
      parse_fail("unknown key \"" + key + "\" in " + where);
  }
}

std::string token_of(const Json& v, const std::string& where) {
  if (v.is_string())
    return v.get<std::string>();
  if (v.is_number_integer())
    return std::to_string(v.get<long long>());
  parse_fail(where + ": values must be strings or integers");
}

Json token_json(const Value& v) {
  if (v.numeric && is_integer(*v.numeric) && v.token == format_numeric_token(*v.numeric) &&
      v.numeric->get_num().fits_slong_p())
    return v.numeric->get_num().get_si();
  return v.token;
}

} // namespace

ScmParts parse_document(const Json& doc) {
  check_keys(doc, {"spaces", "exogenous", "endogenous", "meta"}, "document");
  for (const char* key : {"spaces", "exogenous", "endogenous"})
    if (!doc.contains(key))
      parse_fail(std::string("document is missing \"") + key + "\"");

  std::map<std::string, OutcomeSpace> spaces;
  if (!doc["spaces"].is_object())
    parse_fail("spaces must be an object");
  for (const auto& [name, values] : doc["spaces"].items()) {
    if (!values.is_array())
      parse_fail("space " + name + " must be a list of values");
    std::vector<Value> vals;
    for (const auto& v : values)
      vals.push_back(make_value(token_of(v, "space " + name)));
    spaces.emplace(name, OutcomeSpace(name, std::move(vals)));
  }
  auto space_of = [&](const Json& node, const std::string& node_name) -> const OutcomeSpace& {
    if (!node.contains("space") || !node["space"].is_string())
      parse_fail("node " + node_name + " needs a \"space\" name");
    auto it = spaces.find(node["space"].get<std::string>());
    if (it == spaces.end())
      parse_fail("node " + node_name + " uses unknown space " + node["space"].get<std::string>());
    return it->second;
  };

  ScmParts parts;
  if (doc.contains("meta"))
    parts.meta = doc["meta"];

  std::map<std::string, NodeId> ids;
  auto declare = [&](const std::string& name, NodeId id) {
    if (!ids.emplace(name, id).second)
      parse_fail("duplicate node name " + name);
  };

  if (!doc["exogenous"].is_object())
    parse_fail("exogenous must be an object");
  for (const auto& [name, node] : doc["exogenous"].items()) {
    check_keys(node, {"space", "measure", "measure_apriori", "parents"}, "exogenous node " + name);
    declare(name, NodeId::exo(parts.exogenous.size()));
    parts.exogenous.push_back({name, space_of(node, name)});
  }
  if (!doc["endogenous"].is_object())
    parse_fail("endogenous must be an object");
  for (const auto& [name, node] : doc["endogenous"].items()) {
    check_keys(node, {"space", "parents", "table", "expr", "apriori"}, "endogenous node " + name);
    declare(name, NodeId::endo(parts.endogenous.size()));
    parts.endogenous.push_back({name, space_of(node, name)});
  }

  for (const auto& [name, id] : ids)
    parts.graph.add_node(id);

  auto resolve = [&](const Json& parent, const std::string& child) {
    if (!parent.is_string())
      parse_fail("parents of " + child + " must be node names");
    auto it = ids.find(parent.get<std::string>());
    if (it == ids.end())
      parse_fail("dangling edge " + parent.get<std::string>() + " -> " + child);
    return it->second;
  };

  // Exogenous nodes: measure, plus any (illegal) parents kept in the graph for validate().
  std::size_t j = 0;
  for (const auto& [name, node] : doc["exogenous"].items()) {
    const OutcomeSpace& space = parts.exogenous[j].space;
    std::vector<Rational> probs(space.size(), Rational(0));
    if (!node.contains("measure"))
      parse_fail("exogenous node " + name + " needs a measure");
    if (!node["measure"].is_object())
      parse_fail("measure of " + name + " must be an object");
    for (const auto& [token, p] : node["measure"].items()) {
      const auto v = space.index_of(token);
      if (!v)
        parse_fail("measure of " + name + " mentions unknown value " + token);
      if (!p.is_string())
        parse_fail("measure of " + name + " must use \"p/q\" strings");
      probs[static_cast<std::size_t>(*v)] = parse_rational(p.get<std::string>());
    }
    parts.measure.per_node.push_back(std::move(probs));
    parts.measure.apriori_known.push_back(node.value("measure_apriori", false));
    if (node.contains("parents"))
      for (const auto& p : node["parents"])
        parts.graph.add_edge(resolve(p, name), NodeId::exo(j));
    ++j;
  }

  std::size_t i = 0;
  for (const auto& [name, node] : doc["endogenous"].items()) {
    MechanismTable m;
    m.target = NodeId::endo(i);
    m.apriori = node.value("apriori", false);
    std::vector<NodeDecl> parent_decls;
    if (node.contains("parents")) {
      if (!node["parents"].is_array())
        parse_fail("parents of " + name + " must be a list");
      for (const auto& p : node["parents"]) {
        const NodeId pid = resolve(p, name);
        if (pid == m.target)
          parse_fail("node " + name + " lists itself as a parent");
        m.parents.push_back(pid);
        const NodeDecl& d = pid.is_endogenous() ? parts.endogenous[pid.index] : parts.exogenous[pid.index];
        parent_decls.push_back(d);
        m.parent_sizes.push_back(d.space.size());
        parts.graph.add_edge(pid, m.target);
      }
    }
    const OutcomeSpace& target_space = parts.endogenous[i].space;
    const bool has_table = node.contains("table");
    const bool has_expr = node.contains("expr");
    if (has_table == has_expr)
      parse_fail("node " + name + " needs exactly one of \"table\" or \"expr\"");
    if (has_expr) {
      if (!node["expr"].is_string())
        parse_fail("expr of " + name + " must be a string");
      m.rows = tabulate(Expression::parse(node["expr"].get<std::string>()), parent_decls, target_space);
    } else {
      m.rows.assign(m.row_count(), -1);
      if (!node["table"].is_array())
        parse_fail("table of " + name + " must be a list of [parent values, value] rows");
      std::set<std::size_t> seen;
      for (const auto& row : node["table"]) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_array())
          parse_fail("table row of " + name + " must be [[parent values...], value]");
        if (row[0].size() != m.parents.size())
          parse_fail("table row of " + name + " has the wrong arity");
        std::vector<ValueIndex> tuple;
        for (std::size_t k = 0; k < m.parents.size(); ++k) {
          const auto tok = token_of(row[0][k], "table of " + name);
          const auto v = parent_decls[k].space.index_of(tok);
          if (!v)
            parse_fail("table of " + name + " uses unknown value " + tok + " for " + parent_decls[k].name);
          tuple.push_back(*v);
        }
        const auto out_tok = token_of(row[1], "table of " + name);
        const auto out = target_space.index_of(out_tok);
        if (!out)
          parse_fail("table of " + name + " maps to " + out_tok + ", outside space " + target_space.name());
        const auto r = m.row_index(tuple);
        if (!seen.insert(r).second)
          parse_fail("table of " + name + " lists a parent tuple twice");
        m.rows[r] = *out;
      }
    }
    parts.mechanisms.push_back(std::move(m));
    ++i;
  }
  return parts;
}

Scm build_scm(const Json& document) {
  Scm scm(parse_document(document));
  const auto report = validate(scm);
  if (!report.ok())
    throw ScmError(ErrorCode::Validation, report.violations.front().message, to_json(report));
  return scm;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScmError(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
}

Scm load_scm(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ScmError(ErrorCode::Parse, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return build_scm(parse_json_text(buffer.str()));
}

Json serialize(const Scm& scm) {
  Json doc;
  Json spaces = Json::object();
  auto add_space = [&](const OutcomeSpace& s) {
    if (spaces.contains(s.name()))
      return;
    Json values = Json::array();
    for (const Value& v : s.values())
      values.push_back(token_json(v));
    spaces[s.name()] = std::move(values);
  };
  for (const auto& d : scm.exogenous())
    add_space(d.space);
  for (const auto& d : scm.endogenous())
    add_space(d.space);
  doc["spaces"] = std::move(spaces);

  Json exo = Json::object();
  for (std::size_t j = 0; j < scm.exo_count(); ++j) {
    const NodeDecl& d = scm.exogenous()[j];
    Json node;
    node["space"] = d.space.name();
    Json measure = Json::object();
    for (std::size_t v = 0; v < d.space.size(); ++v)
      measure[d.space.values()[v].token] = format_rational(scm.measure().per_node[j][v]);
    node["measure"] = std::move(measure);
    node["measure_apriori"] = static_cast<bool>(scm.measure().apriori_known[j]);
    exo[d.name] = std::move(node);
  }
  doc["exogenous"] = std::move(exo);

  Json endo = Json::object();
  for (std::size_t i = 0; i < scm.endo_count(); ++i) {
    const NodeDecl& d = scm.endogenous()[i];
    const MechanismTable& m = scm.mechanism(i);
    Json node;
    node["space"] = d.space.name();
    Json parents = Json::array();
    for (NodeId p : m.parents)
      parents.push_back(scm.name(p));
    node["parents"] = std::move(parents);
    Json table = Json::array();
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
      const auto tuple = m.row_tuple(r);
      Json in = Json::array();
      for (std::size_t k = 0; k < tuple.size(); ++k)
        in.push_back(token_json(scm.space(m.parents[k]).at(tuple[k])));
      table.push_back(Json::array({std::move(in), token_json(d.space.at(m.rows[r]))}));
    }
    node["table"] = std::move(table);
    node["apriori"] = m.apriori;
    endo[d.name] = std::move(node);
  }
  doc["endogenous"] = std::move(endo);
  doc["meta"] = scm.meta().is_null() ? Json::object() : scm.meta();
  return doc;
}

std::string dump_canonical(const Json& j) { return j.dump(2, ' ', false) + "\n"; }

Json to_json(const ValidationReport& report) {
  Json j;
  j["valid"] = report.ok();
  Json list = Json::array();
  for (const auto& v : report.violations)
    list.push_back(Json{{"code", v.code}, {"message", v.message}, {"subject", v.subject}});
  j["violations"] = std::move(list);
  return j;
}

} // namespace scm
