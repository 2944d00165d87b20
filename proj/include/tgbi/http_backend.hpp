#pragma once

#include <map>
#include <string>

#include "tgbi/translator.hpp"

namespace tgbi {

/// Configuration-driven HTTP translation adapter.
///
/// `{{text}}` in the URL is replaced by the URL-encoded source; in the body
/// template by the JSON-escaped source. The translated string is read from the
/// response JSON at `response_path` (dot-separated, numeric parts index arrays).
struct HttpAdapterConfig {
  std::string url;
  std::string method = "POST";
  std::string body_template;
  std::string content_type = "application/json";
  std::string response_path;
  std::map<std::string, std::string> headers;
  std::string auth_header;  // e.g. "Authorization"
  std::string auth_env;     // environment variable holding the secret
  std::string auth_prefix;  // e.g. "Bearer "
  int timeout_seconds = 30;

  /// Throws Error(ConfigError) when url or response_path is missing.
  static HttpAdapterConfig from_endpoint(const std::map<std::string, std::string>& endpoint);
};

std::string url_encode(std::string_view text);
std::string json_escape(std::string_view text);

class HttpTranslator : public Translator {
 public:
  explicit HttpTranslator(HttpAdapterConfig config);
  std::string translate(const EecSentence& sentence, const std::string& source) override;

 private:
  HttpAdapterConfig config_;
  std::string auth_value_;
};

}  // namespace tgbi
