#include "tgbi/http_backend.hpp"

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

namespace tgbi {

namespace {

std::string replace_all(std::string text, std::string_view needle, std::string_view with) {
  std::size_t pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    text.replace(pos, needle.size(), with);
    pos += with.size();
  }
  return text;
}

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string target;  // /path?query
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw Error(ErrorCode::ConfigError, "url lacks a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

std::string extract(const nlohmann::json& body, const std::string& path) {
  const nlohmann::json* node = &body;
  std::size_t start = 0;
  while (start <= path.size()) {
    auto end = path.find('.', start);
    if (end == std::string::npos) end = path.size();
    const auto part = path.substr(start, end - start);
    if (node->is_array()) {
      std::size_t index = 0;
      try {
        index = std::stoul(part);
      } catch (const std::exception&) {
        throw PermanentError("response path part '" + part + "' is not an index");
      }
      if (index >= node->size()) throw PermanentError("response array too short at '" + part + "'");
      node = &(*node)[index];
    } else if (node->is_object() && node->contains(part)) {
      node = &(*node)[part];
    } else {
      throw PermanentError("response lacks '" + part + "'");
    }
    start = end + 1;
  }
  if (!node->is_string()) throw PermanentError("response value at '" + path + "' is not a string");
  return node->get<std::string>();
}

}  // namespace

std::string url_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' ||
        c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0x0F]);
    }
  }
  return out;
}

std::string json_escape(std::string_view text) {
  auto quoted = nlohmann::json(std::string(text)).dump();
  return quoted.substr(1, quoted.size() - 2);
}

HttpAdapterConfig HttpAdapterConfig::from_endpoint(const std::map<std::string, std::string>& endpoint) {
  HttpAdapterConfig c;
  auto get = [&](const std::string& key, std::string& into) {
    if (auto it = endpoint.find(key); it != endpoint.end()) into = it->second;
  };
  get("url", c.url);
  get("method", c.method);
  get("body_template", c.body_template);
  get("content_type", c.content_type);
  get("response_path", c.response_path);
  get("auth_header", c.auth_header);
  get("auth_env", c.auth_env);
  get("auth_prefix", c.auth_prefix);
  if (auto it = endpoint.find("timeout_seconds"); it != endpoint.end()) {
    c.timeout_seconds = std::stoi(it->second);
  }
  for (const auto& [key, value] : endpoint) {
    if (key.rfind("header:", 0) == 0) c.headers[key.substr(7)] = value;
  }
  if (c.url.empty()) throw Error(ErrorCode::ConfigError, "http backend needs 'url'");
  if (c.response_path.empty()) throw Error(ErrorCode::ConfigError, "http backend needs 'response_path'");
  if (c.method != "GET" && c.method != "POST") {
    throw Error(ErrorCode::ConfigError, "http method must be GET or POST");
  }
  return c;
}

HttpTranslator::HttpTranslator(HttpAdapterConfig config) : config_(std::move(config)) {
  if (!config_.auth_header.empty()) {
    const char* secret = config_.auth_env.empty() ? nullptr : std::getenv(config_.auth_env.c_str());
    if (!secret) {
      throw Error(ErrorCode::ConfigError,
                  "environment variable '" + config_.auth_env + "' for the auth header is not set");
    }
    auth_value_ = config_.auth_prefix + secret;
  }
}

std::string HttpTranslator::translate(const EecSentence&, const std::string& source) {
  const auto url = replace_all(config_.url, "{{text}}", url_encode(source));
  const auto [origin, target] = split_url(url);

  httplib::Client client(origin);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);
  client.set_write_timeout(config_.timeout_seconds, 0);

  httplib::Headers headers;
  for (const auto& [name, value] : config_.headers) headers.emplace(name, value);
  if (!auth_value_.empty()) headers.emplace(config_.auth_header, auth_value_);

  httplib::Result result;
  if (config_.method == "GET") {
    result = client.Get(target, headers);
  } else {
    const auto body = replace_all(config_.body_template, "{{text}}", json_escape(source));
    result = client.Post(target, headers, body, config_.content_type);
  }
  if (!result) {
    const auto err = result.error();
    const bool connection = err == httplib::Error::Connection || err == httplib::Error::ConnectionTimeout ||
                            err == httplib::Error::SSLConnection;
    throw TransientError("request failed: " + httplib::to_string(err), connection);
  }
  const int status = result->status;
  if (status == 429 || status >= 500) {
    throw TransientError("HTTP " + std::to_string(status), false);
  }
  if (status < 200 || status >= 300) throw PermanentError("HTTP " + std::to_string(status));

  nlohmann::json body;
  try {
    body = nlohmann::json::parse(result->body);
  } catch (const nlohmann::json::exception& e) {
    throw PermanentError(std::string("response is not JSON: ") + e.what());
  }
  return extract(body, config_.response_path);
}

}  // namespace tgbi
