#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tgbi {

enum class ErrorCode {
  FileUnreadable,
  FormatError,
  InvalidEntry,
  EmptyLexicon,
  NotHangulSyllable,
  EmptyInput,
  BackendUnreachable,
  FixtureMissingSentences,
  RateLimitConfigInvalid,
  DuplicateSentenceId,
  EmptySubset,
  MissingSubset,
  InvariantViolation,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

/// Base of every error the library throws. The code is stable and is what
/// callers (and the CLI exit-code mapping) should branch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Malformed input that cannot be skipped row-by-row. `line` is 1-based.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class MissingSentencesError : public Error {
 public:
  explicit MissingSentencesError(std::vector<std::string> ids);
  const std::vector<std::string>& ids() const noexcept { return ids_; }

 private:
  std::vector<std::string> ids_;
};

}  // namespace tgbi
