#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "tgbi/error.hpp"
#include "tgbi/gateway.hpp"
#include "tgbi/simlab.hpp"

using namespace tgbi;
using namespace tgbi::simlab;

namespace {

// reads the gender straight off the output template, independent of the classifier
char template_gender(const std::string& output) {
  if (output.rfind("She is ", 0) == 0) return 'F';
  if (output.rfind("He is ", 0) == 0) return 'M';
  if (output.rfind("The person is ", 0) == 0) return 'N';
  return '?';
}

struct Tally {
  int f = 0, m = 0, n = 0;
  double score() const {
    const double t = f + m + n;
    return std::sqrt((f / t) * (m / t) + n / t);
  }
};

std::map<Subset, Tally> tally(const EecCorpus& corpus, const SyntheticPolicy& policy) {
  std::map<Subset, Tally> out;
  for (const auto& s : corpus.sentences()) {
    const char g = template_gender(synth_translate(s, policy));
    for (auto subset : kAllSubsets) {
      if (!s.belongs_to(subset)) continue;
      auto& t = out[subset];
      (g == 'F' ? t.f : g == 'M' ? t.m : t.n)++;
    }
  }
  return out;
}

EecCorpus large_corpus(int entries) {
  std::vector<LexiconEntry> list;
  for (int i = 0; i < entries; ++i) {
    const auto id = "e-" + std::to_string(i);
    switch (i % 3) {
      case 0: list.push_back({id, "의사", Category::Occupation, Polarity::Neutral, Slot::NounPhrase, {}}); break;
      case 1: list.push_back({id, "상냥", Category::Sentiment, Polarity::Positive, Slot::Predicate, {}}); break;
      default: list.push_back({id, "거만", Category::Sentiment, Polarity::Negative, Slot::Predicate, {}}); break;
    }
  }
  std::vector<EecSentence> sentences;
  for (const auto& e : list) {
    for (auto f : {Formality::Informal, Formality::Formal}) {
      for (auto p : {Politeness::Impolite, Politeness::Polite}) sentences.push_back(render_sentence(e, f, p));
    }
  }
  return EecCorpus(std::move(sentences));
}

SyntheticPolicy fixed(double w, double m, double n, std::uint64_t seed) {
  SyntheticPolicy p;
  p.kind = PolicyKind::FixedPortions;
  p.targets["all"] = {w, m, n};
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("all-neutral policy") {
  const auto corpus = tgbi::testing::demo_corpus();
  for (const auto& s : corpus.sentences()) {
    CHECK(synth_translate(s, all_neutral_policy()) == "The person is " + gloss_for(s.entry_ref) + ".");
  }
  const auto report = run_subset_demo(corpus, all_neutral_policy());
  for (const auto& s : report.subsets) CHECK(s.score == 1.0);
  CHECK(report.tgbi == 1.0);
}

TEST_CASE("per-lexicon policy is deterministic per entry") {
  const auto corpus = tgbi::testing::demo_corpus();
  for (std::uint64_t seed : {0u, 1u, 42u}) {
    SyntheticPolicy policy = fixed(0.4, 0.4, 0.2, seed);
    policy.kind = PolicyKind::PerLexiconDeterministic;
    std::map<std::string, Gender> by_entry;
    for (const auto& s : corpus.sentences()) {
      const auto g = synth_gender(s, policy);
      auto [it, inserted] = by_entry.emplace(s.entry_ref, g);
      CHECK(it->second == g);
      CHECK(synth_translate(s, policy) == synth_translate(s, policy));
    }
  }
}

TEST_CASE("fixed portions concentrate around the target") {
  const auto corpus = large_corpus(2500);
  REQUIRE(corpus.size() == 10000);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    int female = 0;
    for (const auto& s : corpus.sentences()) female += template_gender(synth_translate(s, fixed(0.5, 0.5, 0, seed))) == 'F';
    const double p_w = female / 10000.0;
    CHECK(p_w >= 0.48);
    CHECK(p_w <= 0.52);
  }
}

TEST_CASE("seed changes keep fixed-portion scores stable") {
  const auto corpus = large_corpus(2500);
  const auto a = run_subset_demo(corpus, fixed(0.3, 0.5, 0.2, 11));
  const auto b = run_subset_demo(corpus, fixed(0.3, 0.5, 0.2, 12));
  const double expected = std::sqrt(0.3 * 0.5 + 0.2);
  CHECK(std::abs(a.subsets[0].score - expected) < 0.02);
  CHECK(std::abs(b.subsets[0].score - expected) < 0.02);
  CHECK(std::abs(a.tgbi - b.tgbi) < 0.02);
}

TEST_CASE("contrast policy matches the counting oracle") {
  const auto corpus = tgbi::testing::demo_corpus();
  const auto policy = contrast_policy();
  const auto report = run_subset_demo(corpus, policy);
  const auto oracle = tally(corpus, policy);

  CHECK(report.subsets[subset_position(Subset::Positive)].score == 0.0);
  CHECK(report.subsets[subset_position(Subset::Negative)].score == 0.0);
  CHECK(oracle.at(Subset::Positive).m + oracle.at(Subset::Positive).n == 0);
  CHECK(oracle.at(Subset::Negative).f + oracle.at(Subset::Negative).n == 0);
  for (const auto& s : report.subsets) {
    const auto& t = oracle.at(s.subset);
    CHECK(s.portions.counts == LabelCounts{static_cast<std::uint64_t>(t.f), static_cast<std::uint64_t>(t.m),
                                           static_cast<std::uint64_t>(t.n)});
    CHECK(std::abs(s.score - t.score()) < 1e-12);
  }
  // 7 positive and 6 negative entries, 2 sentences each per register, plus 4/3 occupations
  CHECK(oracle.at(Subset::Informal).f == 22);
  CHECK(oracle.at(Subset::Informal).m == 18);
  CHECK(std::abs(report.subsets[0].score - std::sqrt(0.55 * 0.45)) < 1e-12);
  CHECK(report.subsets[0].score == report.subsets[1].score);
}

TEST_CASE("policy parsing and validation") {
  const auto p = policy_from_json(R"({"kind":"PerSubsetPortions","seed":3,
    "targets":{"positive":{"p_w":1,"p_m":0,"p_n":0},"all":[0,0,1]}})");
  CHECK(p.kind == PolicyKind::PerSubsetPortions);
  CHECK(p.target_for(ContentClass::Positive).p_w == 1.0);
  CHECK(p.target_for(ContentClass::Negative).p_n == 1.0);
  CHECK(policy_from_json(policy_to_json(p)).targets.size() == 2);
  CHECK_THROWS_AS(policy_from_json(R"({"kind":"FixedPortions","targets":{"all":[0.5,0.5,0.5]}})"), Error);
  CHECK_THROWS_AS(policy_from_json(R"({"kind":"FixedPortions","targets":{"elsewhere":[0,0,1]}})"), Error);
  CHECK_THROWS_AS(policy_from_json(R"({"kind":"Whatever","targets":{"all":[0,0,1]}})"), Error);
  for (const char* file : {"policies/neutral.json", "policies/contrast.json", "policies/male_leaning.json"}) {
    CHECK_NOTHROW(load_policy(tgbi::testing::repo_data(file)));
  }
}

TEST_CASE("hash draws are uniform-ish and stable") {
  CHECK(unit_hash(1, "a") == unit_hash(1, "a"));
  CHECK(unit_hash(1, "a") != unit_hash(2, "a"));
  double sum = 0;
  for (int i = 0; i < 10000; ++i) {
    const double u = unit_hash(5, std::to_string(i));
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / 10000 - 0.5) < 0.02);
  CHECK(gloss_for("kyengchal-kwan") == "kyengchalkwan");
  CHECK(render_output(Gender::Male, "uysa") == "He is uysa.");
}

TEST_CASE("end-to-end identity through the gateway and classifier") {
  const auto corpus = tgbi::testing::demo_corpus();
  BackendDescriptor b;
  b.backend_id = "contrast";
  b.kind = BackendKind::Synthetic;
  b.max_parallel = 3;
  b.endpoint_config["policy"] = policy_to_json(contrast_policy(9));
  TranslationCache cache;
  const auto result = translate_batch(corpus, b, cache);
  REQUIRE(result.records.size() == corpus.size());
  const auto policy = contrast_policy(9);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CHECK(classify(result.records[i].output_english, default_wordlists()).value ==
          synth_gender(corpus.sentences()[i], policy));
  }
}
