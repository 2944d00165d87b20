#include "tgbi/gateway.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include <json.hpp>

#include "tgbi/error.hpp"
#include "tgbi/http_backend.hpp"
#include "tgbi/rate_limiter.hpp"
#include "tgbi/simlab.hpp"
#include "tgbi/utf8.hpp"

namespace tgbi {

std::string_view to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::HttpAdapter: return "http";
    case BackendKind::FixtureFile: return "fixture";
    case BackendKind::Synthetic: return "synthetic";
  }
  return "?";
}

std::optional<BackendKind> parse_backend_kind(std::string_view text) {
  if (text == "http") return BackendKind::HttpAdapter;
  if (text == "fixture") return BackendKind::FixtureFile;
  if (text == "synthetic") return BackendKind::Synthetic;
  return std::nullopt;
}

void validate_descriptor(const BackendDescriptor& backend) {
  if (!(std::isfinite(backend.rate_limit) && backend.rate_limit > 0.0)) {
    throw Error(ErrorCode::RateLimitConfigInvalid,
                "backend '" + backend.backend_id + "': rate_limit must be > 0");
  }
  if (backend.max_parallel < 1) {
    throw Error(ErrorCode::RateLimitConfigInvalid,
                "backend '" + backend.backend_id + "': max_parallel must be >= 1");
  }
}

BackendDescriptor backend_from_json(std::string_view json_text, const std::filesystem::path& base_dir) {
  BackendDescriptor b;
  try {
    auto obj = nlohmann::json::parse(json_text);
    b.backend_id = obj.at("backend_id").get<std::string>();
    const auto kind_text = obj.at("kind").get<std::string>();
    auto kind = parse_backend_kind(kind_text);
    if (!kind) throw Error(ErrorCode::ConfigError, "unknown backend kind '" + kind_text + "'");
    b.kind = *kind;
    b.rate_limit = obj.value("rate_limit", 1.0);
    b.max_parallel = obj.value("max_parallel", 1);
    if (auto it = obj.find("endpoint"); it != obj.end()) {
      for (const auto& [key, value] : it->items()) {
        if (key == "headers" && value.is_object()) {
          for (const auto& [name, v] : value.items()) b.endpoint_config["header:" + name] = v.get<std::string>();
        } else if (value.is_string()) {
          b.endpoint_config[key] = value.get<std::string>();
        } else {
          b.endpoint_config[key] = value.dump();
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("backend JSON: ") + e.what());
  }
  for (const char* key : {"path", "policy_file"}) {
    auto it = b.endpoint_config.find(key);
    if (it != b.endpoint_config.end() && !base_dir.empty() && std::filesystem::path(it->second).is_relative()) {
      it->second = (base_dir / it->second).lexically_normal().string();
    }
  }
  if (b.backend_id.empty()) throw Error(ErrorCode::ConfigError, "backend_id must not be empty");
  validate_descriptor(b);
  return b;
}

BackendDescriptor load_backend_config(const std::filesystem::path& path) {
  return backend_from_json(utf8::read_file(path), path.parent_path());
}

std::string backend_to_json(const BackendDescriptor& backend) {
  nlohmann::ordered_json endpoint = nlohmann::ordered_json::object();
  for (const auto& [k, v] : backend.endpoint_config) {
    // secrets never live here; only the env var name does
    endpoint[k] = v;
  }
  nlohmann::ordered_json obj{{"backend_id", backend.backend_id},
                             {"kind", to_string(backend.kind)},
                             {"rate_limit", backend.rate_limit},
                             {"max_parallel", backend.max_parallel},
                             {"endpoint", endpoint}};
  return obj.dump(2) + '\n';
}

double BatchResult::coverage(std::size_t corpus_size) const {
  return corpus_size == 0 ? 0.0
                          : static_cast<double>(records.size()) / static_cast<double>(corpus_size);
}

FixtureMap parse_fixture(std::string_view content) {
  if (!utf8::is_valid(content)) throw Error(ErrorCode::FormatError, "fixture is not valid UTF-8");
  FixtureMap map;
  const auto lines = utf8::split_lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = lines[i];
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos) {
      throw FormatError(i + 1, "expected sentence_id<TAB>output");
    }
    std::string id(line.substr(0, tab));
    std::string output(line.substr(tab + 1));
    if (id.empty() || output.empty()) throw FormatError(i + 1, "empty sentence id or output");
    if (!map.emplace(id, std::move(output)).second) {
      throw Error(ErrorCode::DuplicateSentenceId, id);
    }
  }
  return map;
}

FixtureMap load_fixture(const std::filesystem::path& path) {
  return parse_fixture(utf8::read_file(path));
}

std::string FixtureTranslator::translate(const EecSentence& sentence, const std::string&) {
  auto it = fixture_.find(sentence.sentence_id);
  if (it == fixture_.end()) throw PermanentError("no fixture output for " + sentence.sentence_id);
  return it->second;
}

std::vector<std::string> FixtureTranslator::missing(const EecCorpus& corpus) const {
  std::vector<std::string> ids;
  for (const auto& s : corpus.sentences()) {
    if (!fixture_.contains(s.sentence_id)) ids.push_back(s.sentence_id);
  }
  return ids;
}

std::unique_ptr<Translator> make_translator(const BackendDescriptor& backend) {
  const auto& cfg = backend.endpoint_config;
  switch (backend.kind) {
    case BackendKind::FixtureFile: {
      auto it = cfg.find("path");
      if (it == cfg.end()) throw Error(ErrorCode::ConfigError, "fixture backend needs 'path'");
      return std::make_unique<FixtureTranslator>(load_fixture(it->second));
    }
    case BackendKind::Synthetic: {
      if (auto it = cfg.find("policy"); it != cfg.end()) {
        return std::make_unique<simlab::SyntheticTranslator>(simlab::policy_from_json(it->second));
      }
      if (auto it = cfg.find("policy_file"); it != cfg.end()) {
        return std::make_unique<simlab::SyntheticTranslator>(simlab::load_policy(it->second));
      }
      throw Error(ErrorCode::ConfigError, "synthetic backend needs 'policy' or 'policy_file'");
    }
    case BackendKind::HttpAdapter:
      return std::make_unique<HttpTranslator>(HttpAdapterConfig::from_endpoint(cfg));
  }
  throw Error(ErrorCode::ConfigError, "unsupported backend kind");
}

namespace {

struct Outcome {
  std::optional<TranslationRecord> record;
  std::optional<TranslationFailure> failure;
  bool connection_failure = false;
};

}  // namespace

BatchResult translate_batch(const EecCorpus& corpus, const BackendDescriptor& backend,
                            Translator& translator, TranslationCache& cache,
                            const GatewayOptions& options) {
  validate_descriptor(backend);
  if (options.max_attempts < 1) {
    throw Error(ErrorCode::RateLimitConfigInvalid, "max_attempts must be >= 1");
  }
  if (auto missing = translator.missing(corpus); !missing.empty()) {
    throw MissingSentencesError(std::move(missing));
  }

  const auto& sentences = corpus.sentences();
  std::vector<Outcome> outcomes(sentences.size());
  std::vector<std::string> sources(sentences.size());
  std::vector<std::string> keys(sentences.size());
  std::vector<std::size_t> pending;

  for (std::size_t i = 0; i < sentences.size(); ++i) {
    sources[i] = sentences[i].text_hangul + (options.append_period ? "." : "");
    keys[i] = TranslationCache::make_key(backend.backend_id, sources[i]);
    if (auto hit = cache.lookup(keys[i])) {
      outcomes[i].record = TranslationRecord{sentences[i].sentence_id, backend.backend_id, sources[i],
                                             hit->output, std::nullopt, hit->fetched_at, true};
    } else {
      pending.push_back(i);
    }
  }

  std::optional<RateLimiter> limiter;
  if (backend.kind == BackendKind::HttpAdapter) limiter.emplace(backend.rate_limit);

  auto work = [&](std::size_t i) {
    const auto& sentence = sentences[i];
    auto& outcome = outcomes[i];
    auto backoff = options.initial_backoff;
    std::string reason;
    int attempt = 0;
    while (attempt < options.max_attempts) {
      ++attempt;
      if (limiter) limiter->acquire();
      try {
        auto output = translator.translate(sentence, sources[i]);
        if (output.empty()) throw PermanentError("empty output");
        CacheEntry entry{keys[i], backend.backend_id, sources[i], output, utc_timestamp()};
        cache.append(entry);
        outcome.record = TranslationRecord{sentence.sentence_id, backend.backend_id, sources[i],
                                           std::move(output), std::nullopt, entry.fetched_at, false};
        return;
      } catch (const TransientError& e) {
        reason = e.what();
        outcome.connection_failure = e.connection_failure();
        if (attempt < options.max_attempts) {
          std::this_thread::sleep_for(backoff);
          backoff *= 2;
        }
      } catch (const std::exception& e) {
        reason = e.what();
        outcome.connection_failure = false;
        break;
      }
    }
    outcome.failure = TranslationFailure{sentence.sentence_id, reason, attempt};
  };

  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(backend.max_parallel), pending.size());
  if (workers <= 1) {
    for (auto i : pending) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < pending.size(); k = next++) work(pending[k]);
      });
    }
  }

  BatchResult result;
  std::size_t fetched = 0;
  bool all_connection_failures = true;
  for (auto i : pending) {
    if (outcomes[i].record) ++fetched;
    if (outcomes[i].failure && !outcomes[i].connection_failure) all_connection_failures = false;
  }
  if (!pending.empty() && fetched == 0 && all_connection_failures) {
    throw Error(ErrorCode::BackendUnreachable,
                "backend '" + backend.backend_id + "': " + outcomes[pending.front()].failure->reason);
  }
  for (auto& o : outcomes) {
    if (o.record) result.records.push_back(std::move(*o.record));
    if (o.failure) result.failures.push_back(std::move(*o.failure));
  }
  return result;
}

BatchResult translate_batch(const EecCorpus& corpus, const BackendDescriptor& backend,
                            TranslationCache& cache, const GatewayOptions& options) {
  validate_descriptor(backend);
  auto translator = make_translator(backend);
  return translate_batch(corpus, backend, *translator, cache, options);
}

namespace {

std::string_view evidence_kind_name(EvidenceKind kind) {
  switch (kind) {
    case EvidenceKind::Female: return "female";
    case EvidenceKind::Male: return "male";
    case EvidenceKind::NeutralMarker: return "neutral_marker";
  }
  return "?";
}

std::optional<EvidenceKind> parse_evidence_kind(std::string_view text) {
  if (text == "female") return EvidenceKind::Female;
  if (text == "male") return EvidenceKind::Male;
  if (text == "neutral_marker") return EvidenceKind::NeutralMarker;
  return std::nullopt;
}

}  // namespace

std::string records_to_jsonl(const std::vector<TranslationRecord>& records, std::string_view run_id) {
  std::string out;
  for (const auto& r : records) {
    nlohmann::ordered_json obj;
    if (!run_id.empty()) obj["run_id"] = run_id;
    obj["sentence_id"] = r.sentence_id;
    obj["backend_id"] = r.backend_id;
    obj["source"] = r.source_hangul;
    obj["output"] = r.output_english;
    if (r.label) {
      obj["label"] = to_string(r.label->value);
      auto evidence = nlohmann::ordered_json::array();
      for (const auto& e : r.label->evidence) {
        evidence.push_back({{"token", e.token}, {"offset", e.offset}, {"kind", evidence_kind_name(e.kind)}});
      }
      obj["evidence"] = std::move(evidence);
    }
    obj["fetched_at"] = r.fetched_at;
    obj["from_cache"] = r.from_cache;
    out += obj.dump() + '\n';
  }
  return out;
}

std::vector<TranslationRecord> records_from_jsonl(std::string_view content) {
  std::vector<TranslationRecord> records;
  const auto lines = utf8::split_lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    try {
      auto obj = nlohmann::json::parse(lines[i]);
      TranslationRecord r;
      r.sentence_id = obj.at("sentence_id").get<std::string>();
      r.backend_id = obj.at("backend_id").get<std::string>();
      r.source_hangul = obj.at("source").get<std::string>();
      r.output_english = obj.at("output").get<std::string>();
      r.fetched_at = obj.value("fetched_at", std::string{});
      r.from_cache = obj.value("from_cache", false);
      if (obj.contains("label")) {
        const auto value = obj.at("label").get<std::string>();
        GenderLabel label;
        if (value == "F") {
          label.value = Gender::Female;
        } else if (value == "M") {
          label.value = Gender::Male;
        } else if (value == "N") {
          label.value = Gender::Neutral;
        } else {
          throw FormatError(i + 1, "unknown label '" + value + "'");
        }
        for (const auto& e : obj.value("evidence", nlohmann::json::array())) {
          const auto kind = parse_evidence_kind(e.at("kind").get<std::string>());
          if (!kind) throw FormatError(i + 1, "unknown evidence kind");
          label.evidence.push_back({e.at("token").get<std::string>(), e.at("offset").get<std::size_t>(), *kind});
        }
        r.label = std::move(label);
      }
      records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(i + 1, std::string("translation record: ") + e.what());
    }
  }
  return records;
}

std::string failures_to_json(const std::vector<TranslationFailure>& failures) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& f : failures) {
    arr.push_back({{"sentence_id", f.sentence_id}, {"reason", f.reason}, {"attempts", f.attempts}});
  }
  return arr.dump(2) + '\n';
}

}  // namespace tgbi
