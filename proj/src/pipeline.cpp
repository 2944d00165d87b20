#include "tgbi/pipeline.hpp"

#include <set>
#include <unordered_map>

#include <json.hpp>

#include "tgbi/cache.hpp"
#include "tgbi/error.hpp"
#include "tgbi/report.hpp"
#include "tgbi/utf8.hpp"

namespace tgbi {

namespace {

bool filename_safe(const std::string& id) {
  if (id.empty() || id == "." || id == "..") return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_' || c == '.';
    if (!ok) return false;
  }
  return true;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? (base / path).lexically_normal() : path;
}

}  // namespace

void RunConfig::validate() const {
  if (backends.empty()) throw Error(ErrorCode::ConfigError, "at least one backend is required");
  if (output_dir.empty()) throw Error(ErrorCode::ConfigError, "output_dir is required");
  std::set<std::string> ids;
  for (const auto& b : backends) {
    if (!filename_safe(b.backend_id)) {
      throw Error(ErrorCode::ConfigError, "backend id '" + b.backend_id + "' must match [A-Za-z0-9._-]+");
    }
    if (!ids.insert(b.backend_id).second) {
      throw Error(ErrorCode::ConfigError, "backend id '" + b.backend_id + "' used twice");
    }
    validate_descriptor(b);
  }
}

RunConfig run_config_from_json(std::string_view json_text, const std::filesystem::path& base_dir) {
  RunConfig config;
  try {
    auto obj = nlohmann::json::parse(json_text);
    config.lexicon_path = resolve(base_dir, obj.at("lexicon").get<std::string>());
    if (auto it = obj.find("lexicon_format"); it != obj.end()) {
      auto fmt = parse_lexicon_format(it->get<std::string>());
      if (!fmt) throw Error(ErrorCode::ConfigError, "lexicon_format must be tsv or jsonl");
      config.lexicon_format = *fmt;
    }
    config.output_dir = resolve(base_dir, obj.at("output_dir").get<std::string>());
    for (const auto& b : obj.at("backends")) {
      if (b.is_string()) {
        config.backends.push_back(load_backend_config(resolve(base_dir, b.get<std::string>())));
      } else {
        config.backends.push_back(backend_from_json(b.dump(), base_dir));
      }
    }
    if (auto it = obj.find("flags"); it != obj.end()) {
      config.flags.paper_exact_wordlists = it->value("paper_exact_wordlists", false);
      config.flags.allow_partial = it->value("allow_partial", false);
      config.flags.append_period = it->value("append_period", false);
    }
    if (auto it = obj.find("wordlists"); it != obj.end()) {
      config.wordlist_override_path = resolve(base_dir, it->get<std::string>());
    }
    if (auto it = obj.find("cache"); it != obj.end()) {
      config.cache_path = resolve(base_dir, it->get<std::string>());
    }
    config.gateway.max_attempts = obj.value("retries", 3);
    config.gateway.initial_backoff = std::chrono::milliseconds(obj.value("backoff_ms", 1000));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("run config: ") + e.what());
  }
  config.gateway.append_period = config.flags.append_period;
  config.validate();
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return run_config_from_json(utf8::read_file(path), path.parent_path());
}

GenderWordlists resolve_wordlists(bool paper_exact,
                                  const std::optional<std::filesystem::path>& override_path) {
  if (override_path) return load_wordlists(*override_path);
  return paper_exact ? paper_exact_wordlists() : default_wordlists();
}

std::string compute_run_id(std::string_view lexicon_bytes, const std::vector<BackendDescriptor>& backends,
                           const RunFlags& flags, const GenderWordlists& lists) {
  std::string material(lexicon_bytes);
  for (const auto& b : backends) material += '\x1e' + backend_to_json(b);
  material += '\x1e';
  material += flags.append_period ? '1' : '0';
  material += flags.allow_partial ? '1' : '0';
  material += '\x1e' + wordlists_to_json(lists);
  return "run-" + sha256_hex(material).substr(0, 12);
}

ScoreOutcome score_records(const EecCorpus& corpus, std::vector<TranslationRecord> records,
                           const GenderWordlists& lists, const std::string& backend_id,
                           bool allow_partial, const std::string& run_id) {
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < corpus.size(); ++i) position.emplace(corpus.sentences()[i].sentence_id, i);

  std::vector<std::optional<Gender>> labels(corpus.size());
  for (auto& r : records) {
    if (r.backend_id != backend_id) {
      throw Error(ErrorCode::InvariantViolation,
                  "record for backend '" + r.backend_id + "' in '" + backend_id + "' scoring");
    }
    auto it = position.find(r.sentence_id);
    if (it == position.end()) {
      throw Error(ErrorCode::InvariantViolation, "record for unknown sentence '" + r.sentence_id + "'");
    }
    if (labels[it->second]) {
      throw Error(ErrorCode::InvariantViolation, "two records for sentence '" + r.sentence_id + "'");
    }
    r.label = classify(r.output_english, lists);
    labels[it->second] = r.label->value;
  }

  ScoreOutcome outcome;
  outcome.missing = corpus.size() - records.size();
  if (outcome.missing == 0 || allow_partial) {
    outcome.report = evaluate_labels(corpus, labels, backend_id);
    outcome.report->run_id = run_id;
  }
  outcome.labelled = std::move(records);
  return outcome;
}

RunOutcome run_eval(const RunConfig& config) {
  config.validate();
  const auto& out = config.output_dir;
  std::filesystem::create_directories(out);

  const auto lexicon_bytes = utf8::read_file(config.lexicon_path);
  auto loaded = parse_lexicon(lexicon_bytes, config.lexicon_format,
                              config.lexicon_path.filename().string());
  const auto corpus = generate_corpus(loaded.lexicon);
  const auto lists = resolve_wordlists(config.flags.paper_exact_wordlists, config.wordlist_override_path);

  RunOutcome outcome;
  outcome.run_id = compute_run_id(lexicon_bytes, config.backends, config.flags, lists);
  outcome.corpus_size = corpus.size();

  nlohmann::ordered_json manifest{
      {"run_id", outcome.run_id},
      {"lexicon", config.lexicon_path.filename().string()},
      {"lexicon_sha256", sha256_hex(lexicon_bytes)},
      {"corpus_size", corpus.size()},
      {"flags",
       {{"paper_exact_wordlists", config.flags.paper_exact_wordlists},
        {"allow_partial", config.flags.allow_partial},
        {"append_period", config.flags.append_period}}},
      {"wordlists", nlohmann::ordered_json::parse(wordlists_to_json(lists))},
      {"backends", nlohmann::ordered_json::array()}};
  for (const auto& b : config.backends) {
    manifest["backends"].push_back(nlohmann::ordered_json::parse(backend_to_json(b)));
  }
  utf8::write_file(out / "run.json", manifest.dump(2) + '\n');
  utf8::write_file(out / "corpus.jsonl", corpus_to_jsonl(corpus));
  utf8::write_file(out / "subsets.json", subset_index_to_json(corpus));
  utf8::write_file(out / "corpus.txt", corpus_to_text(corpus, config.flags.append_period));
  utf8::write_file(out / "rejections.jsonl", rejections_to_jsonl(loaded.rejections, loaded.warnings));

  TranslationCache cache(config.cache_path.value_or(out / "cache.jsonl"));
  bool any_partial = false;
  bool any_failure = false;

  for (const auto& backend : config.backends) {
    BackendOutcome bo;
    bo.backend_id = backend.backend_id;
    try {
      auto batch = translate_batch(corpus, backend, cache, config.gateway);
      bo.records = batch.records.size();
      bo.failures = batch.failures.size();
      bo.coverage = batch.coverage(corpus.size());
      auto scored = score_records(corpus, std::move(batch.records), lists, backend.backend_id,
                                  config.flags.allow_partial, outcome.run_id);
      utf8::write_file(out / "records" / (backend.backend_id + ".jsonl"),
                       records_to_jsonl(scored.labelled, outcome.run_id));
      utf8::write_file(out / "failures" / (backend.backend_id + ".json"), failures_to_json(batch.failures));
      if (bo.failures > 0) any_partial = true;
      if (scored.report) {
        utf8::write_file(out / "reports" / (backend.backend_id + ".json"), report_to_json(*scored.report));
        bo.report = scored.report;
        outcome.reports.push_back(*scored.report);
      }
    } catch (const std::exception& e) {
      bo.error = backend.backend_id + ": " + e.what();
      any_failure = true;
    }
    outcome.backends.push_back(std::move(bo));
  }

  if (!outcome.reports.empty()) emit_report(outcome.reports, out, "comparison");
  outcome.exit_code = any_failure ? kExitFailure : any_partial ? kExitPartial : kExitOk;
  return outcome;
}

}  // namespace tgbi
