#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace scm {

enum class ErrorCode {
  Parse,
  Validation,
  UnknownNode,
  InvalidArgument,
  NonUniqueSolution,
  NoSolution,
  ConditionOnNull,
  FilterToNull,
  CyclicGraph,
  OverlappingSets,
  NotApriori,
  ModelMismatch,
  RemodelFailed,
  MalformedLeak,
};

/// Stable machine-readable code, e.g. "NON_UNIQUE_SOLUTION".
std::string_view error_code_name(ErrorCode code);

/// Every engine failure is an ScmError carrying a stable code plus structured details.
class ScmError : public std::runtime_error {
public:
  ScmError(ErrorCode code, const std::string& message, nlohmann::ordered_json details = {})
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::ordered_json& details() const noexcept { return details_; }

  nlohmann::ordered_json to_json() const;

private:
  ErrorCode code_;
  nlohmann::ordered_json details_;
};

} // namespace scm
