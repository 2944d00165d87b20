// tgbi: build the evaluation corpus, translate it, label outputs and score
// translation gender bias.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tgbi/eec.hpp"
#include "tgbi/error.hpp"
#include "tgbi/gateway.hpp"
#include "tgbi/lexicon.hpp"
#include "tgbi/metrics.hpp"
#include "tgbi/pipeline.hpp"
#include "tgbi/published.hpp"
#include "tgbi/report.hpp"
#include "tgbi/simlab.hpp"
#include "tgbi/utf8.hpp"

namespace fs = std::filesystem;
using namespace tgbi;

namespace {

LexiconFormat format_or_throw(const std::string& text) {
  auto fmt = parse_lexicon_format(text);
  if (!fmt) throw Error(ErrorCode::ConfigError, "--format must be tsv or jsonl");
  return *fmt;
}

std::string run_id_of(std::string_view records_jsonl) {
  auto lines = utf8::split_lines(records_jsonl);
  if (lines.empty()) return {};
  auto obj = nlohmann::json::parse(lines.front(), nullptr, false);
  return obj.is_object() ? obj.value("run_id", std::string{}) : std::string{};
}

void print_outcome(const RunOutcome& outcome) {
  std::cout << "run " << outcome.run_id << ": " << outcome.corpus_size << " sentences\n";
  for (const auto& b : outcome.backends) {
    if (b.error) {
      std::cout << "  " << b.backend_id << ": FAILED " << *b.error << "\n";
      continue;
    }
    std::cout << "  " << b.backend_id << ": " << b.records << " records, " << b.failures
              << " failures, coverage " << format4(b.coverage);
    if (b.report) std::cout << ", TGBI " << format4(b.report->tgbi);
    else std::cout << ", TGBI withheld (partial coverage; pass --allow-partial)";
    std::cout << "\n";
  }
  if (!outcome.reports.empty()) std::cout << "\n" << render_markdown(outcome.reports);
}

int cmd_generate(const std::string& lexicon, const std::string& format, const fs::path& out,
                 bool append_period) {
  auto loaded = load_lexicon(lexicon, format_or_throw(format));
  auto corpus = generate_corpus(loaded.lexicon);
  utf8::write_file(out / "corpus.jsonl", corpus_to_jsonl(corpus));
  utf8::write_file(out / "subsets.json", subset_index_to_json(corpus));
  utf8::write_file(out / "corpus.txt", corpus_to_text(corpus, append_period));
  utf8::write_file(out / "rejections.jsonl", rejections_to_jsonl(loaded.rejections, loaded.warnings));
  std::cout << loaded.lexicon.size() << " entries (" << loaded.lexicon.count(Polarity::Positive)
            << " positive, " << loaded.lexicon.count(Polarity::Negative) << " negative, "
            << loaded.lexicon.count(Polarity::Neutral) << " occupation), "
            << loaded.rejections.size() << " rejected, " << loaded.warnings.size() << " warnings\n";
  std::cout << corpus.size() << " sentences:";
  for (auto s : kAllSubsets) std::cout << " " << to_string(s) << "=" << corpus.subset(s).size();
  std::cout << "\n";
  return kExitOk;
}

int cmd_translate(const fs::path& corpus_path, const std::vector<std::string>& backend_paths,
                  const fs::path& out, const std::optional<std::string>& cache_path,
                  const GatewayOptions& options) {
  const auto corpus = corpus_from_jsonl(utf8::read_file(corpus_path));
  TranslationCache cache(cache_path ? fs::path(*cache_path) : out / "cache.jsonl");
  int code = kExitOk;
  for (const auto& path : backend_paths) {
    const auto backend = load_backend_config(path);
    try {
      auto batch = translate_batch(corpus, backend, cache, options);
      utf8::write_file(out / "records" / (backend.backend_id + ".jsonl"), records_to_jsonl(batch.records));
      utf8::write_file(out / "failures" / (backend.backend_id + ".json"), failures_to_json(batch.failures));
      std::cout << backend.backend_id << ": " << batch.records.size() << " records, "
                << batch.failures.size() << " failures\n";
      if (!batch.failures.empty() && code == kExitOk) code = kExitPartial;
    } catch (const MissingSentencesError& e) {
      std::cerr << backend.backend_id << ": " << e.what() << "\n";
      code = kExitFailure;
    } catch (const Error& e) {
      std::cerr << backend.backend_id << ": " << e.what() << "\n";
      code = kExitFailure;
    }
  }
  return code;
}

int cmd_score(const fs::path& corpus_path, const std::vector<std::string>& record_paths,
              const fs::path& out, bool paper_exact, const std::optional<std::string>& wordlists,
              bool allow_partial) {
  const auto corpus = corpus_from_jsonl(utf8::read_file(corpus_path));
  const auto lists = resolve_wordlists(paper_exact, wordlists ? std::optional<fs::path>(*wordlists) : std::nullopt);
  std::vector<EvaluationReport> reports;
  int code = kExitOk;
  for (const auto& path : record_paths) {
    const auto content = utf8::read_file(path);
    auto records = records_from_jsonl(content);
    if (records.empty()) throw Error(ErrorCode::EmptyInput, path + " holds no records");
    const auto backend_id = records.front().backend_id;
    auto scored = score_records(corpus, std::move(records), lists, backend_id, allow_partial, run_id_of(content));
    if (scored.missing > 0) code = kExitPartial;
    if (!scored.report) {
      std::cerr << backend_id << ": " << scored.missing
                << " sentence(s) lack a translation; TGBI withheld (pass --allow-partial)\n";
      continue;
    }
    utf8::write_file(out / "reports" / (backend_id + ".json"), report_to_json(*scored.report));
    reports.push_back(*scored.report);
  }
  if (!reports.empty()) {
    emit_report(reports, out, "comparison");
    std::cout << render_markdown(reports);
  }
  return code;
}

int cmd_demo(const std::string& lexicon, const std::string& format, const std::optional<std::string>& policy_path,
             const std::string& preset, std::uint64_t seed, const std::optional<std::string>& out) {
  auto loaded = load_lexicon(lexicon, format_or_throw(format));
  auto corpus = generate_corpus(loaded.lexicon);
  simlab::SyntheticPolicy policy;
  std::string id;
  if (policy_path) {
    policy = simlab::load_policy(*policy_path);
    id = fs::path(*policy_path).stem().string();
  } else if (preset == "neutral") {
    policy = simlab::all_neutral_policy();
    id = "neutral";
  } else if (preset == "contrast") {
    policy = simlab::contrast_policy(seed);
    id = "contrast";
  } else {
    throw Error(ErrorCode::ConfigError, "--preset must be neutral or contrast");
  }
  std::vector<EvaluationReport> reports{simlab::run_subset_demo(corpus, policy, default_wordlists(), id)};
  std::cout << render_markdown(reports);
  if (out) emit_report(reports, *out, "demo");
  return kExitOk;
}

int cmd_verify(std::uint64_t samples, std::uint64_t seed) {
  const auto bounds = verify_bounds(samples, seed);
  std::printf("bounds: %llu samples (seed %llu), P_s in [%.6f, %.6f], z=0 edge max %.12f at p_w=%.6f\n",
              static_cast<unsigned long long>(bounds.samples), static_cast<unsigned long long>(bounds.seed),
              bounds.min_score, bounds.max_score, bounds.edge_max_score, bounds.edge_argmax_p_w);
  for (const auto& v : bounds.violations) std::printf("  VIOLATION %s\n", v.c_str());
  std::printf("bounds: %s (%zu violations)\n", bounds.ok() ? "PASS" : "FAIL", bounds.violations.size());

  std::size_t cell_failures = 0;
  std::printf("\npublished cells: sqrt(p_w(1-p_w-p_n)+p_n) vs printed P_s, tolerance %.0e\n",
              published::kCellTolerance);
  for (const auto& c : published::check_cells()) {
    std::printf("  %s %-14s printed %.4f recomputed %.6f dev %.6f %s", std::string(c.system).c_str(),
                subset_label(c.subset).c_str(), c.published, c.recomputed, c.deviation,
                c.within_tolerance ? "ok" : "MISMATCH");
    if (!c.within_tolerance && c.truncated_counts) {
      std::printf("  (consistent with truncated portions: %llu female, %llu neutral of %llu)",
                  static_cast<unsigned long long>(c.truncated_counts->first),
                  static_cast<unsigned long long>(c.truncated_counts->second),
                  static_cast<unsigned long long>(published::full_corpus_subset_size(c.subset)));
    }
    std::printf("\n");
    if (!c.within_tolerance) ++cell_failures;
  }
  std::size_t avg_failures = 0;
  std::printf("\npublished averages, tolerance %.0e\n", published::kAverageTolerance);
  for (const auto& a : published::check_averages()) {
    std::printf("  %s printed %.4f mean of cells %.5f dev %.5f %s\n", std::string(a.system).c_str(),
                a.published, a.recomputed, a.deviation, a.within_tolerance ? "ok" : "MISMATCH");
    if (!a.within_tolerance) ++avg_failures;
  }
  std::printf("published table: %zu/21 cells, %zu/3 averages within tolerance\n", 21 - cell_failures,
              3 - avg_failures);
  if (!bounds.ok()) return kExitFailure;
  return cell_failures + avg_failures > 0 ? kExitPublishedMismatch : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Translation gender bias index: corpus generation, translation and scoring"};
  app.require_subcommand(1);

  std::string lexicon;
  std::string format = "tsv";
  std::string out;
  bool append_period = false;

  auto* gen = app.add_subcommand("generate", "Build the evaluation corpus from a lexicon");
  gen->add_option("--lexicon", lexicon, "Lexicon file")->required()->check(CLI::ExistingFile);
  gen->add_option("--format", format, "tsv or jsonl");
  gen->add_option("--out", out, "Output directory")->required();
  gen->add_flag("--append-period", append_period, "End each plain-text sentence with '.'");

  std::string corpus_path;
  std::vector<std::string> backends;
  std::optional<std::string> cache_path;
  int retries = 3;
  int backoff_ms = 1000;
  auto* tr = app.add_subcommand("translate", "Translate a corpus with one or more backends");
  tr->add_option("--corpus", corpus_path, "corpus.jsonl")->required()->check(CLI::ExistingFile);
  tr->add_option("--backend", backends, "Backend config JSON (repeatable)")->required()->check(CLI::ExistingFile);
  tr->add_option("--out", out, "Output directory")->required();
  tr->add_option("--cache", cache_path, "Cache journal (default <out>/cache.jsonl)");
  tr->add_flag("--append-period", append_period, "Send sentences with a final period");
  tr->add_option("--retries", retries, "Attempts per sentence")->check(CLI::PositiveNumber);
  tr->add_option("--backoff-ms", backoff_ms, "Initial retry backoff")->check(CLI::NonNegativeNumber);

  std::vector<std::string> record_paths;
  bool paper_exact = false;
  bool allow_partial = false;
  std::optional<std::string> wordlists;
  auto* sc = app.add_subcommand("score", "Label translation records and compute the index");
  sc->add_option("--corpus", corpus_path, "corpus.jsonl")->required()->check(CLI::ExistingFile);
  sc->add_option("--records", record_paths, "Records JSONL (repeatable)")->required()->check(CLI::ExistingFile);
  sc->add_option("--out", out, "Output directory")->required();
  sc->add_flag("--paper-exact-wordlists", paper_exact, "Use only the minimal example token lists");
  sc->add_option("--wordlists", wordlists, "Wordlist override JSON")->check(CLI::ExistingFile);
  sc->add_flag("--allow-partial", allow_partial, "Score despite missing translations");

  std::optional<std::string> config_path;
  auto* ev = app.add_subcommand("eval", "Run the whole pipeline");
  ev->add_option("--config", config_path, "Run config JSON")->check(CLI::ExistingFile);
  ev->add_option("--lexicon", lexicon, "Lexicon file")->check(CLI::ExistingFile);
  ev->add_option("--format", format, "tsv or jsonl");
  ev->add_option("--backend", backends, "Backend config JSON (repeatable)")->check(CLI::ExistingFile);
  ev->add_option("--out", out, "Output directory");
  ev->add_option("--cache", cache_path, "Cache journal");
  ev->add_option("--wordlists", wordlists, "Wordlist override JSON")->check(CLI::ExistingFile);
  ev->add_flag("--paper-exact-wordlists", paper_exact, "Use only the minimal example token lists");
  ev->add_flag("--allow-partial", allow_partial, "Score despite missing translations");
  ev->add_flag("--append-period", append_period, "Send sentences with a final period");
  ev->add_option("--retries", retries, "Attempts per sentence")->check(CLI::PositiveNumber);
  ev->add_option("--backoff-ms", backoff_ms, "Initial retry backoff")->check(CLI::NonNegativeNumber);

  std::optional<std::string> policy_path;
  std::string preset = "contrast";
  std::uint64_t seed = 0;
  std::optional<std::string> demo_out;
  auto* demo = app.add_subcommand("demo", "Score a synthetic translator on the corpus");
  demo->add_option("--lexicon", lexicon, "Lexicon file")->required()->check(CLI::ExistingFile);
  demo->add_option("--format", format, "tsv or jsonl");
  demo->add_option("--policy", policy_path, "Synthetic policy JSON")->check(CLI::ExistingFile);
  demo->add_option("--preset", preset, "neutral or contrast (when no --policy)");
  demo->add_option("--seed", seed, "Seed for the contrast preset");
  demo->add_option("--out", demo_out, "Write demo.{md,csv,json} here");

  std::uint64_t samples = 10000;
  std::uint64_t verify_seed = 20190304;
  auto* ver = app.add_subcommand("verify", "Check measure bounds and the published reference table");
  ver->add_option("--samples", samples, "Simplex samples")->check(CLI::PositiveNumber);
  ver->add_option("--seed", verify_seed, "Sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitFailure;
  }

  GatewayOptions gateway;
  gateway.append_period = append_period;
  gateway.max_attempts = retries;
  gateway.initial_backoff = std::chrono::milliseconds(backoff_ms);

  try {
    if (*gen) return cmd_generate(lexicon, format, out, append_period);
    if (*tr) return cmd_translate(corpus_path, backends, out, cache_path, gateway);
    if (*sc) return cmd_score(corpus_path, record_paths, out, paper_exact, wordlists, allow_partial);
    if (*ev) {
      RunConfig config;
      if (config_path) {
        config = load_run_config(*config_path);
      } else {
        if (lexicon.empty() || backends.empty() || out.empty()) {
          std::cerr << "eval needs --config, or --lexicon, --backend and --out\n";
          return kExitFailure;
        }
        config.lexicon_path = lexicon;
        config.lexicon_format = format_or_throw(format);
        for (const auto& b : backends) config.backends.push_back(load_backend_config(b));
        config.output_dir = out;
        config.gateway = gateway;
      }
      if (paper_exact) config.flags.paper_exact_wordlists = true;
      if (allow_partial) config.flags.allow_partial = true;
      if (append_period) config.flags.append_period = config.gateway.append_period = true;
      if (wordlists) config.wordlist_override_path = *wordlists;
      if (cache_path) config.cache_path = *cache_path;
      auto outcome = run_eval(config);
      print_outcome(outcome);
      return outcome.exit_code;
    }
    if (*demo) return cmd_demo(lexicon, format, policy_path, preset, seed, demo_out);
    if (*ver) return cmd_verify(samples, verify_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
