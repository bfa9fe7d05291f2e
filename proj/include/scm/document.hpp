#pragma once

#include "scm/model.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace scm {

using Json = nlohmann::ordered_json;

/// Reads an ScmDocument into raw parts. Throws ScmError(Parse) for structural problems:
/// unknown keys, unknown spaces or parents, malformed rationals, bad expressions.
/// Semantic problems (non-total tables, measures not summing to 1, ...) are left to validate().
ScmParts parse_document(const Json& document);

/// parse_document + validate. Throws ScmError(Validation) carrying every violation.
Scm build_scm(const Json& document);

Json parse_json_text(const std::string& text);
Scm load_scm(const std::filesystem::path& path);

/// Canonical document: spaces in order of first use, tables with rows in canonical order,
/// every exogenous value listed in the measure.
Json serialize(const Scm& scm);

/// Canonical text form: two-space indent, UTF-8 kept as is, trailing newline.
std::string dump_canonical(const Json& j);

Json to_json(const ValidationReport& report);

} // namespace scm
