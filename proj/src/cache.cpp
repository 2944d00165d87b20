#include "tgbi/cache.hpp"

#include <chrono>
#include <ctime>

#include <openssl/evp.h>

#include <json.hpp>

#include "tgbi/error.hpp"
#include "tgbi/utf8.hpp"

namespace tgbi {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::InvariantViolation, "SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0x0F]);
  }
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string TranslationCache::make_key(std::string_view backend_id, std::string_view source) {
  std::string material(backend_id);
  material.push_back('\x1f');
  material.append(source);
  return sha256_hex(material);
}

TranslationCache::TranslationCache(std::filesystem::path journal) : journal_(std::move(journal)) {
  if (std::filesystem::exists(*journal_)) {
    const auto content = utf8::read_file(*journal_);
    const auto lines = utf8::split_lines(content);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      try {
        auto obj = nlohmann::json::parse(lines[i]);
        CacheEntry e{obj.at("key").get<std::string>(), obj.at("backend_id").get<std::string>(),
                     obj.at("source").get<std::string>(), obj.at("output").get<std::string>(),
                     obj.at("fetched_at").get<std::string>()};
        entries_.try_emplace(e.key, std::move(e));
      } catch (const nlohmann::json::exception& ex) {
        throw FormatError(i + 1, std::string("cache journal: ") + ex.what());
      }
    }
  } else if (journal_->has_parent_path()) {
    std::filesystem::create_directories(journal_->parent_path());
  }
  out_.open(*journal_, std::ios::binary | std::ios::app);
  if (!out_) throw Error(ErrorCode::FileUnreadable, "cannot open cache journal " + journal_->string());
}

std::optional<CacheEntry> TranslationCache::lookup(const std::string& key) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool TranslationCache::append(const CacheEntry& entry) {
  std::unique_lock lock(mutex_);
  if (!entries_.try_emplace(entry.key, entry).second) return false;
  if (out_.is_open()) {
    nlohmann::ordered_json obj{{"key", entry.key},
                               {"backend_id", entry.backend_id},
                               {"source", entry.source},
                               {"output", entry.output},
                               {"fetched_at", entry.fetched_at}};
    out_ << obj.dump() << '\n';
    out_.flush();
  }
  return true;
}

std::size_t TranslationCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace tgbi
