#include "tgbi/error.hpp"

namespace tgbi {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::FileUnreadable: return "FileUnreadable";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::InvalidEntry: return "InvalidEntry";
    case ErrorCode::EmptyLexicon: return "EmptyLexicon";
    case ErrorCode::NotHangulSyllable: return "NotHangulSyllable";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::BackendUnreachable: return "BackendUnreachable";
    case ErrorCode::FixtureMissingSentences: return "FixtureMissingSentences";
    case ErrorCode::RateLimitConfigInvalid: return "RateLimitConfigInvalid";
    case ErrorCode::DuplicateSentenceId: return "DuplicateSentenceId";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::MissingSubset: return "MissingSubset";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

FormatError::FormatError(std::size_t line, const std::string& message)
    : Error(ErrorCode::FormatError, "line " + std::to_string(line) + ": " + message),
      line_(line) {}

namespace {
std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ", ";
    out += id;
  }
  return out;
}
}  // namespace

MissingSentencesError::MissingSentencesError(std::vector<std::string> ids)
    : Error(ErrorCode::FixtureMissingSentences,
            std::to_string(ids.size()) + " sentence(s) missing: " + join_ids(ids)),
      ids_(std::move(ids)) {}

}  // namespace tgbi
