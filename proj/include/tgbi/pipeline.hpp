#pragma once

// lexicon -> corpus -> gateway -> classifier -> metrics, with every stage's
// artifacts persisted under one run id so any stage can be re-run offline.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tgbi/eec.hpp"
#include "tgbi/gateway.hpp"
#include "tgbi/gender.hpp"
#include "tgbi/lexicon.hpp"
#include "tgbi/metrics.hpp"

namespace tgbi {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitPartial = 2;
inline constexpr int kExitPublishedMismatch = 3;

struct RunFlags {
  bool paper_exact_wordlists = false;
  bool allow_partial = false;
  bool append_period = false;
};

struct RunConfig {
  std::filesystem::path lexicon_path;
  LexiconFormat lexicon_format = LexiconFormat::Tsv;
  std::vector<BackendDescriptor> backends;
  std::filesystem::path output_dir;
  RunFlags flags;
  std::optional<std::filesystem::path> wordlist_override_path;
  std::optional<std::filesystem::path> cache_path;  // default: <output_dir>/cache.jsonl
  GatewayOptions gateway;

  /// At least one backend, unique filename-safe backend ids, output dir set.
  void validate() const;
};

/// JSON {lexicon, lexicon_format?, backends:[path | object], output_dir,
/// flags?{...}, wordlists?, cache?, retries?, backoff_ms?}. Relative paths
/// resolve against `base_dir`.
RunConfig run_config_from_json(std::string_view json_text, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

/// Override file wins; otherwise paper-exact or extended defaults.
GenderWordlists resolve_wordlists(bool paper_exact,
                                  const std::optional<std::filesystem::path>& override_path);

/// "run-" + 12 hex digits of a hash over the inputs that determine results.
std::string compute_run_id(std::string_view lexicon_bytes, const std::vector<BackendDescriptor>& backends,
                           const RunFlags& flags, const GenderWordlists& lists);

struct ScoreOutcome {
  std::vector<TranslationRecord> labelled;  // input records with labels attached
  std::optional<EvaluationReport> report;   // absent when partial and not allowed
  std::size_t missing = 0;                  // corpus sentences without a record
};

/// Classifies each record and scores the seven subsets. Records must belong to
/// one backend and name corpus sentences at most once
/// (Error(InvariantViolation) otherwise).
ScoreOutcome score_records(const EecCorpus& corpus, std::vector<TranslationRecord> records,
                           const GenderWordlists& lists, const std::string& backend_id,
                           bool allow_partial, const std::string& run_id = {});

struct BackendOutcome {
  std::string backend_id;
  std::size_t records = 0;
  std::size_t failures = 0;
  double coverage = 0.0;
  std::optional<EvaluationReport> report;
  std::optional<std::string> error;  // hard failure, attributed to this backend
};

struct RunOutcome {
  std::string run_id;
  std::size_t corpus_size = 0;
  std::vector<BackendOutcome> backends;
  std::vector<EvaluationReport> reports;
  int exit_code = kExitOk;
};

/// Writes run.json, corpus.jsonl, subsets.json, corpus.txt, rejections.jsonl,
/// records/<id>.jsonl, failures/<id>.json, reports/<id>.json and
/// comparison.{md,csv,json} under output_dir.
RunOutcome run_eval(const RunConfig& config);

}  // namespace tgbi
