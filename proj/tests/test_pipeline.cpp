#include <doctest.h>

#include <httplib.h>

#include <cstdlib>
#include <json.hpp>
#include <thread>

#include "test_support.hpp"
#include "tgbi/error.hpp"
#include "tgbi/pipeline.hpp"
#include "tgbi/report.hpp"

using namespace tgbi;
using tgbi::testing::TempDir;

namespace {

BackendDescriptor fixture_backend(std::string id = "fixture") {
  BackendDescriptor b;
  b.backend_id = std::move(id);
  b.kind = BackendKind::FixtureFile;
  b.endpoint_config["path"] = tgbi::testing::test_data("demo_fixture.tsv").string();
  return b;
}

RunConfig base_config(const TempDir& dir) {
  RunConfig c;
  c.lexicon_path = tgbi::testing::repo_data("demo_lexicon.tsv");
  c.output_dir = dir / "out";
  c.gateway.initial_backoff = std::chrono::milliseconds(1);
  return c;
}

// hand counts from demo_fixture_labels.tsv, per subset (a)..(g)
const std::array<LabelCounts, 7> kHandCounts{{
    {11, 15, 14}, {11, 15, 14}, {11, 14, 15}, {11, 16, 13}, {6, 8, 10}, {8, 11, 9}, {8, 11, 9}}};

int run_cli(const std::string& args) {
  const std::string cmd = std::string(TGBI_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("hand labels agree with the classifier on the fixture") {
  const auto outputs = tgbi::testing::read_table(tgbi::testing::test_data("demo_fixture.tsv"));
  const auto labels = tgbi::testing::read_table(tgbi::testing::test_data("demo_fixture_labels.tsv"));
  REQUIRE(outputs.size() == labels.size());
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    REQUIRE(outputs[i][0] == labels[i][0]);
    CHECK(std::string(to_string(classify(outputs[i][1], default_wordlists()).value)) == labels[i][1]);
  }
}

TEST_CASE("run_eval with the neutral synthetic backend scores 1.0") {
  TempDir dir;
  auto config = base_config(dir);
  config.backends.push_back(load_backend_config(tgbi::testing::repo_data("backends/synthetic_neutral.json")));
  const auto outcome = run_eval(config);
  CHECK(outcome.exit_code == kExitOk);
  REQUIRE(outcome.reports.size() == 1);
  CHECK(outcome.reports[0].tgbi == 1.0);
  CHECK(outcome.corpus_size == 80);
  for (const char* f : {"run.json", "corpus.jsonl", "subsets.json", "corpus.txt", "rejections.jsonl", "cache.jsonl",
                        "comparison.md", "comparison.csv", "comparison.json"}) {
    CHECK(std::filesystem::exists(config.output_dir / f));
  }
  CHECK(utf8::split_lines(utf8::read_file(config.output_dir / "rejections.jsonl")).size() == 3);
}

TEST_CASE("fixture backend reproduces the hand counts") {
  TempDir dir;
  auto config = base_config(dir);
  config.backends.push_back(fixture_backend());
  const auto outcome = run_eval(config);
  REQUIRE(outcome.exit_code == kExitOk);
  const auto report = report_from_json(utf8::read_file(config.output_dir / "reports" / "fixture.json"));
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(report.subsets[i].portions.counts == kHandCounts[i]);
    const auto& c = kHandCounts[i];
    const double t = static_cast<double>(c.total());
    CHECK(report.subsets[i].portions.p_w == std::stod(format4(c.female / t)));
  }
  CHECK(std::abs(outcome.reports[0].tgbi - 0.6737853673406269) < 1e-12);
}

TEST_CASE("two backends produce one comparison table") {
  TempDir dir;
  auto config = base_config(dir);
  config.backends.push_back(fixture_backend());
  config.backends.push_back(load_backend_config(tgbi::testing::repo_data("backends/synthetic_contrast.json")));
  const auto outcome = run_eval(config);
  CHECK(outcome.exit_code == kExitOk);
  const auto md = utf8::read_file(config.output_dir / "comparison.md");
  CHECK(md.rfind("| Sentence set [size] | fixture | " + config.backends[1].backend_id + " |", 0) == 0);
  CHECK(reports_from_json(utf8::read_file(config.output_dir / "comparison.json")).size() == 2);
}

TEST_CASE("re-running from the persisted cache is byte-identical") {
  TempDir dir;
  auto config = base_config(dir);
  config.backends.push_back(fixture_backend());
  run_eval(config);
  const auto first_report = utf8::read_file(config.output_dir / "comparison.json");
  run_eval(config);
  const auto records = utf8::read_file(config.output_dir / "records" / "fixture.jsonl");
  const auto report = utf8::read_file(config.output_dir / "comparison.md");
  run_eval(config);
  CHECK(utf8::read_file(config.output_dir / "records" / "fixture.jsonl") == records);
  CHECK(utf8::read_file(config.output_dir / "comparison.md") == report);
  CHECK(utf8::read_file(config.output_dir / "comparison.json") == first_report);
  CHECK(TranslationCache(config.output_dir / "cache.jsonl").size() == 80);
}

TEST_CASE("incomplete fixture is a hard failure") {
  TempDir dir;
  std::string partial;
  for (const auto& row : tgbi::testing::read_table(tgbi::testing::test_data("demo_fixture.tsv"))) {
    if (row[0].rfind("uysa-", 0) != 0) partial += row[0] + '\t' + row[1] + '\n';
  }
  utf8::write_file(dir / "partial.tsv", partial);
  auto config = base_config(dir);
  auto b = fixture_backend();
  b.endpoint_config["path"] = (dir / "partial.tsv").string();
  config.backends.push_back(b);
  const auto outcome = run_eval(config);
  CHECK(outcome.exit_code == kExitFailure);
  REQUIRE(outcome.backends[0].error.has_value());
  CHECK(outcome.backends[0].error->find("uysa-informal-impolite") != std::string::npos);
}

TEST_CASE("translation failures make a partial run") {
  httplib::Server server;
  server.Get("/t", [](const httplib::Request& req, httplib::Response& res) {
    const auto q = req.get_param_value("q");
    if (q.find("의사") != std::string::npos) {
      res.status = 403;
      return;
    }
    res.set_content(nlohmann::json{{"text", "The person is here."}}.dump(), "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread listener([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  BackendDescriptor b;
  b.backend_id = "local";
  b.kind = BackendKind::HttpAdapter;
  b.rate_limit = 2000;
  b.max_parallel = 4;
  b.endpoint_config = {{"url", "http://127.0.0.1:" + std::to_string(port) + "/t?q={{text}}"},
                       {"method", "GET"},
                       {"response_path", "text"}};

  TempDir dir;
  auto config = base_config(dir);
  config.backends.push_back(b);
  auto strict = run_eval(config);
  CHECK(strict.exit_code == kExitPartial);
  CHECK(strict.reports.empty());
  CHECK(strict.backends[0].failures == 4);
  CHECK_FALSE(std::filesystem::exists(config.output_dir / "comparison.md"));

  config.flags.allow_partial = true;
  config.output_dir = dir / "out2";
  auto lenient = run_eval(config);
  CHECK(lenient.exit_code == kExitPartial);
  REQUIRE(lenient.reports.size() == 1);
  CHECK(lenient.reports[0].coverage == doctest::Approx(76.0 / 80.0));
  CHECK(lenient.reports[0].subsets[subset_position(Subset::Occupation)].portions.n == 24);
  CHECK(utf8::read_file(config.output_dir / "comparison.md").find("95.00%") != std::string::npos);

  server.stop();
  listener.join();
}

TEST_CASE("score_records") {
  const auto corpus = tgbi::testing::demo_corpus();
  TranslationCache cache;
  auto records = translate_batch(corpus, fixture_backend(), cache).records;
  records.pop_back();
  auto strict = score_records(corpus, records, default_wordlists(), "fixture", false);
  CHECK_FALSE(strict.report.has_value());
  CHECK(strict.missing == 1);
  auto lenient = score_records(corpus, records, default_wordlists(), "fixture", true);
  REQUIRE(lenient.report.has_value());
  CHECK(lenient.report->coverage == doctest::Approx(79.0 / 80.0));
  records.push_back(records.front());
  CHECK_THROWS_AS(score_records(corpus, records, default_wordlists(), "fixture", true), Error);
}

TEST_CASE("run configuration") {
  TempDir dir;
  utf8::write_file(dir / "run.json", R"({
    "lexicon": ")" + tgbi::testing::repo_data("demo_lexicon.tsv").string() + R"(",
    "backends": [")" + tgbi::testing::repo_data("backends/synthetic_neutral.json").string() + R"(",
                 {"backend_id": "inline", "kind": "synthetic",
                  "endpoint": {"policy": {"kind": "FixedPortions", "targets": {"all": [0, 0, 1]}}}}],
    "output_dir": "out",
    "flags": {"append_period": true}
  })");
  const auto config = load_run_config(dir / "run.json");
  CHECK(config.backends.size() == 2);
  CHECK(config.output_dir == dir / "out");
  CHECK(config.flags.append_period);

  auto bad = config;
  bad.backends[1].backend_id = bad.backends[0].backend_id;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad.backends[1].backend_id = "../escape";
  CHECK_THROWS_AS(bad.validate(), Error);
  bad.backends.clear();
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("run id depends only on inputs") {
  const auto lists = default_wordlists();
  const std::vector<BackendDescriptor> backends{fixture_backend()};
  const auto id = compute_run_id("lexicon", backends, {}, lists);
  CHECK(id.size() == 16);
  CHECK(id.rfind("run-", 0) == 0);
  CHECK(compute_run_id("lexicon", backends, {}, lists) == id);
  CHECK(compute_run_id("lexicon2", backends, {}, lists) != id);
  CHECK(compute_run_id("lexicon", backends, {}, paper_exact_wordlists()) != id);
}

TEST_CASE("command line stages") {
  TempDir dir;
  const auto out = (dir / "o").string();
  const auto lex = tgbi::testing::repo_data("demo_lexicon.tsv").string();
  const auto fixture_cfg = dir / "fixture.json";
  utf8::write_file(fixture_cfg, backend_to_json(fixture_backend()));

  CHECK(run_cli("generate --lexicon " + lex + " --out " + out) == 0);
  CHECK(std::filesystem::exists(dir / "o" / "corpus.jsonl"));
  CHECK(run_cli("translate --corpus " + out + "/corpus.jsonl --backend " + fixture_cfg.string() + " --out " + out) == 0);
  const auto records = out + "/records/fixture.jsonl";
  CHECK(run_cli("score --corpus " + out + "/corpus.jsonl --records " + records + " --out " + out + "/s1") == 0);
  CHECK(run_cli("score --corpus " + out + "/corpus.jsonl --records " + records + " --out " + out + "/s2") == 0);
  CHECK(utf8::read_file(dir / "o" / "s1" / "comparison.md") == utf8::read_file(dir / "o" / "s2" / "comparison.md"));
  CHECK(utf8::read_file(dir / "o" / "s1" / "comparison.json") ==
        utf8::read_file(dir / "o" / "s2" / "comparison.json"));
  CHECK(run_cli("demo --lexicon " + lex + " --preset neutral --out " + out + "/demo") == 0);
  CHECK(run_cli("eval --lexicon " + lex + " --backend " + fixture_cfg.string() + " --out " + out + "/eval") == 0);
  CHECK(run_cli("generate --lexicon /nonexistent.tsv --out " + out) == kExitFailure);
  CHECK(run_cli("verify --samples 1000") == kExitPublishedMismatch);
}
