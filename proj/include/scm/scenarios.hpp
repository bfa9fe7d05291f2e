#pragma once

#include "scm/document.hpp"
#include "scm/model.hpp"

#include <string>
#include <vector>

namespace scm {

struct Scenario {
  std::string name;
  std::string notes;
  Json document;
};

/// Every built-in model, in a fixed order.
const std::vector<Scenario>& catalog();

/// Throws UnknownNode-style InvalidArgument for unknown names.
const Scenario& find_scenario(const std::string& name);
Scm scenario_scm(const std::string& name);

} // namespace scm
