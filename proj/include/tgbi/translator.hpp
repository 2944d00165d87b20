#pragma once

#include <string>
#include <vector>

#include "tgbi/eec.hpp"
#include "tgbi/error.hpp"

namespace tgbi {

/// A failure worth retrying (timeouts, 429, 5xx, refused connections).
class TransientError : public Error {
 public:
  TransientError(const std::string& message, bool connection_failure)
      : Error(ErrorCode::BackendUnreachable, message), connection_failure_(connection_failure) {}
  bool connection_failure() const noexcept { return connection_failure_; }

 private:
  bool connection_failure_;
};

/// A failure that retrying cannot fix (4xx, malformed response body).
class PermanentError : public Error {
 public:
  explicit PermanentError(const std::string& message)
      : Error(ErrorCode::BackendUnreachable, message) {}
};

class Translator {
 public:
  virtual ~Translator() = default;

  /// `source` is the exact text sent to the system (the Hangul sentence,
  /// possibly with a period appended). Must be safe to call concurrently.
  virtual std::string translate(const EecSentence& sentence, const std::string& source) = 0;

  /// Sentence ids this translator can never answer; checked before any work.
  virtual std::vector<std::string> missing(const EecCorpus&) const { return {}; }
};

}  // namespace tgbi
