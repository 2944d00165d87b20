#pragma once

// Uniform access to translation systems: live HTTP adapters, offline fixture
// files and synthetic translators, behind a persistent cache.

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tgbi/cache.hpp"
#include "tgbi/eec.hpp"
#include "tgbi/gender.hpp"
#include "tgbi/translator.hpp"

namespace tgbi {

enum class BackendKind { HttpAdapter, FixtureFile, Synthetic };

std::string_view to_string(BackendKind kind);  // "http" / "fixture" / "synthetic"
std::optional<BackendKind> parse_backend_kind(std::string_view text);

struct BackendDescriptor {
  std::string backend_id;
  BackendKind kind = BackendKind::FixtureFile;
  /// Opaque per-kind settings. http: url, method, body_template,
  /// response_path, auth_header, auth_env, auth_prefix, content_type,
  /// timeout_seconds, header:<Name>. fixture: path. synthetic: policy (JSON
  /// text) or policy_file.
  std::map<std::string, std::string> endpoint_config;
  double rate_limit = 1.0;  // requests per second
  int max_parallel = 1;
};

/// Throws Error(RateLimitConfigInvalid) on a non-positive rate or parallelism.
void validate_descriptor(const BackendDescriptor& backend);

/// JSON {backend_id, kind, rate_limit, max_parallel, endpoint:{...}}. Relative
/// "path"/"policy_file" values resolve against the config file's directory.
BackendDescriptor backend_from_json(std::string_view json_text,
                                    const std::filesystem::path& base_dir = {});
BackendDescriptor load_backend_config(const std::filesystem::path& path);
std::string backend_to_json(const BackendDescriptor& backend);

struct TranslationRecord {
  std::string sentence_id;
  std::string backend_id;
  std::string source_hangul;  // text as sent
  std::string output_english;
  std::optional<GenderLabel> label;
  std::string fetched_at;
  bool from_cache = false;
};

struct TranslationFailure {
  std::string sentence_id;
  std::string reason;
  int attempts = 0;
};

struct BatchResult {
  std::vector<TranslationRecord> records;  // corpus order
  std::vector<TranslationFailure> failures;

  double coverage(std::size_t corpus_size) const;
};

struct GatewayOptions {
  bool append_period = false;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};  // doubles per retry
};

using FixtureMap = std::unordered_map<std::string, std::string>;

/// TSV sentence_id<TAB>english_output; CRLF tolerated, blank lines skipped.
/// Throws FormatError(line) or Error(DuplicateSentenceId).
FixtureMap parse_fixture(std::string_view content);
FixtureMap load_fixture(const std::filesystem::path& path);

class FixtureTranslator : public Translator {
 public:
  explicit FixtureTranslator(FixtureMap fixture) : fixture_(std::move(fixture)) {}
  std::string translate(const EecSentence& sentence, const std::string& source) override;
  std::vector<std::string> missing(const EecCorpus& corpus) const override;

 private:
  FixtureMap fixture_;
};

std::unique_ptr<Translator> make_translator(const BackendDescriptor& backend);

/// One record per corpus sentence, or an explicit failure after retries.
/// Cache first; live requests honour rate_limit and max_parallel.
/// Throws MissingSentencesError, Error(RateLimitConfigInvalid), and
/// Error(BackendUnreachable) when no sentence could be fetched at all because
/// the endpoint refused connections.
BatchResult translate_batch(const EecCorpus& corpus, const BackendDescriptor& backend,
                            Translator& translator, TranslationCache& cache,
                            const GatewayOptions& options = {});
BatchResult translate_batch(const EecCorpus& corpus, const BackendDescriptor& backend,
                            TranslationCache& cache, const GatewayOptions& options = {});

std::string records_to_jsonl(const std::vector<TranslationRecord>& records,
                             std::string_view run_id = {});
std::vector<TranslationRecord> records_from_jsonl(std::string_view content);
std::string failures_to_json(const std::vector<TranslationFailure>& failures);

}  // namespace tgbi
