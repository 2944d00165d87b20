#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>

namespace tgbi {

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

struct CacheEntry {
  std::string key;
  std::string backend_id;
  std::string source;
  std::string output;
  std::string fetched_at;

  bool operator==(const CacheEntry&) const = default;
};

/// Append-only JSONL journal of every fetched translation, keyed by
/// sha256(backend_id, source). Reads are concurrent; appends are serialized
/// and flushed line by line. The first entry for a key wins.
class TranslationCache {
 public:
  /// In-memory only.
  TranslationCache() = default;
  /// Loads an existing journal (if any) and appends to it. Throws
  /// FormatError on a malformed journal line.
  explicit TranslationCache(std::filesystem::path journal);

  TranslationCache(const TranslationCache&) = delete;
  TranslationCache& operator=(const TranslationCache&) = delete;

  static std::string make_key(std::string_view backend_id, std::string_view source);

  std::optional<CacheEntry> lookup(const std::string& key) const;
  /// Returns false (and writes nothing) when the key is already present.
  bool append(const CacheEntry& entry);
  std::size_t size() const;
  const std::optional<std::filesystem::path>& journal_path() const noexcept { return journal_; }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, CacheEntry> entries_;
  std::optional<std::filesystem::path> journal_;
  std::ofstream out_;
};

}  // namespace tgbi
