#include "scm/error.hpp"

namespace scm {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::Parse: return "PARSE";
  case ErrorCode::Validation: return "VALIDATION";
  case ErrorCode::UnknownNode: return "UNKNOWN_NODE";
  case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
  case ErrorCode::NonUniqueSolution: return "NON_UNIQUE_SOLUTION";
  case ErrorCode::NoSolution: return "NO_SOLUTION";
  case ErrorCode::ConditionOnNull: return "CONDITION_ON_NULL";
  case ErrorCode::FilterToNull: return "FILTER_TO_NULL";
  case ErrorCode::CyclicGraph: return "CYCLIC_GRAPH";
  case ErrorCode::OverlappingSets: return "OVERLAPPING_SETS";
  case ErrorCode::NotApriori: return "NOT_APRIORI";
  case ErrorCode::ModelMismatch: return "MODEL_MISMATCH";
  case ErrorCode::RemodelFailed: return "REMODEL_FAILED";
  case ErrorCode::MalformedLeak: return "MALFORMED_LEAK";
  }
  return "UNKNOWN";
}

nlohmann::ordered_json ScmError::to_json() const {
  nlohmann::ordered_json j;
  j["code"] = std::string(error_code_name(code_));
  j["message"] = what();
  if (!details_.is_null())
    j["details"] = details_;
  return j;
}

} // namespace scm
