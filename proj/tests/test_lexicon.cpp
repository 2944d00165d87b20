#include <doctest.h>

#include <algorithm>
#include <random>

#include "test_support.hpp"
#include "tgbi/error.hpp"
#include "tgbi/lexicon.hpp"

using namespace tgbi;
using tgbi::testing::TempDir;

namespace {

std::string tsv(std::initializer_list<std::string> rows) {
  std::string out(kLexiconTsvHeader);
  out += '\n';
  for (const auto& r : rows) out += r + '\n';
  return out;
}

LexiconEntry entry(std::string id, std::string surface, Category c, Polarity p, Slot s) {
  return LexiconEntry{std::move(id), std::move(surface), c, p, s, {}};
}

}  // namespace

TEST_CASE("minimal well-formed TSV loads both rows") {
  auto result = parse_lexicon(tsv({"sangnyang\t상냥\tSentiment\tPositive\tPredicate\t",
                                   "uysa\t의사\tOccupation\tNeutral\tNounPhrase\t"}),
                              LexiconFormat::Tsv, "mini");
  CHECK(result.lexicon.size() == 2);
  CHECK(result.rejections.empty());
  CHECK(result.lexicon.entries()[0].id == "sangnyang");
  CHECK(result.lexicon.entries()[1].id == "uysa");
  CHECK(result.lexicon.count(Polarity::Positive) == 1);
  CHECK(result.lexicon.count(Polarity::Neutral) == 1);
}

TEST_CASE("gender-specific occupation is rejected, not loaded") {
  auto result = parse_lexicon(tsv({"uysa\t의사\tOccupation\tNeutral\tNounPhrase\t",
                                   "palleylino\t발레리노\tOccupation\tNeutral\tNounPhrase\tGenderSpecific"}),
                              LexiconFormat::Tsv, "t");
  CHECK(result.lexicon.size() == 1);
  CHECK(result.lexicon.find("palleylino") == nullptr);
  REQUIRE(result.rejections.size() == 1);
  CHECK(result.rejections[0].id == "palleylino");
  CHECK(result.rejections[0].line == 3);
  REQUIRE(result.rejections[0].violations.size() == 1);
  CHECK(result.rejections[0].violations[0].to_string() == "ExcludedCategory(GenderSpecific)");
}

TEST_CASE("validate_entry") {
  SUBCASE("well-formed predicate") {
    CHECK(validate_entry(entry("sangnyang", "상냥", Category::Sentiment, Polarity::Positive, Slot::Predicate)).empty());
  }
  SUBCASE("occupation must be neutral") {
    auto v = validate_entry(entry("uysa", "의사", Category::Occupation, Polarity::Positive, Slot::NounPhrase));
    REQUIRE(v.size() == 1);
    CHECK(v[0].code == ViolationCode::OccupationMustBeNeutral);
    CHECK(v[0].to_string() == "OccupationMustBeNeutral");
  }
  SUBCASE("appearance exclusion") {
    auto e = entry("yeyppum", "예쁨", Category::Sentiment, Polarity::Positive, Slot::NounPhrase);
    e.exclusion_flags = {ExclusionFlag::Appearance};
    auto v = validate_entry(e);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == Violation{ViolationCode::ExcludedCategory, ExclusionFlag::Appearance});
    CHECK(v[0].to_string() == "ExcludedCategory(Appearance)");
  }
  SUBCASE("structural rules") {
    CHECK(validate_entry(entry("Bad Id", "상냥", Category::Sentiment, Polarity::Positive, Slot::Predicate))[0].code ==
          ViolationCode::InvalidId);
    CHECK(validate_entry(entry("x", "", Category::Sentiment, Polarity::Positive, Slot::Predicate))[0].code ==
          ViolationCode::EmptySurface);
    CHECK(validate_entry(entry("x", "abc", Category::Sentiment, Polarity::Positive, Slot::Predicate))[0].code ==
          ViolationCode::NoHangulSyllable);
    CHECK(validate_entry(entry("x", "의사X", Category::Occupation, Polarity::Neutral, Slot::NounPhrase))[0].code ==
          ViolationCode::NounPhraseMustEndInSyllable);
    CHECK(validate_entry(entry("x", "의사", Category::Occupation, Polarity::Neutral, Slot::Predicate))[0].code ==
          ViolationCode::OccupationMustBeNounPhrase);
    CHECK(validate_entry(entry("x", "상냥", Category::Sentiment, Polarity::Neutral, Slot::Predicate))[0].code ==
          ViolationCode::SentimentMustBePolar);
  }
  SUBCASE("every violation is reported") {
    auto e = entry("", "", Category::Occupation, Polarity::Negative, Slot::Predicate);
    e.exclusion_flags = {ExclusionFlag::HateTerm, ExclusionFlag::Disability};
    CHECK(validate_entry(e).size() == 6);
  }
}

TEST_CASE("malformed rows are format errors with line numbers") {
  SUBCASE("wrong column count") {
    try {
      parse_lexicon(tsv({"sangnyang\t상냥\tSentiment\tPositive\tPredicate\t", "uysa\t의사\tOccupation"}),
                    LexiconFormat::Tsv, "t");
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("unknown category") {
    CHECK_THROWS_AS(parse_lexicon(tsv({"a\t상냥\tMood\tPositive\tPredicate\t"}), LexiconFormat::Tsv, "t"),
                    FormatError);
  }
  SUBCASE("missing header") {
    CHECK_THROWS_AS(parse_lexicon("a\t상냥\tSentiment\tPositive\tPredicate\t\n", LexiconFormat::Tsv, "t"),
                    FormatError);
  }
  SUBCASE("invalid UTF-8") {
    std::string bad = tsv({"a\t\xC3\x28\tSentiment\tPositive\tPredicate\t"});
    try {
      parse_lexicon(bad, LexiconFormat::Tsv, "t");
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::FormatError);
    }
  }
  SUBCASE("unreadable file") {
    try {
      load_lexicon("/nonexistent/lexicon.tsv", LexiconFormat::Tsv);
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::FileUnreadable);
    }
  }
}

TEST_CASE("duplicates and shared surfaces") {
  auto result = parse_lexicon(tsv({"uysa\t의사\tOccupation\tNeutral\tNounPhrase\t",
                                   "uysa\t간호사\tOccupation\tNeutral\tNounPhrase\t",
                                   "uysa-2\t의사\tOccupation\tNeutral\tNounPhrase\t",
                                   "uysa-s\t의사\tSentiment\tPositive\tNounPhrase\t"}),
                              LexiconFormat::Tsv, "t");
  CHECK(result.lexicon.size() == 2);
  REQUIRE(result.rejections.size() == 2);
  CHECK(result.rejections[0].violations[0].code == ViolationCode::DuplicateId);
  CHECK(result.rejections[1].violations[0].code == ViolationCode::DuplicateSurface);
  REQUIRE(result.warnings.size() == 1);
  CHECK(result.warnings[0].id == "uysa-s");
  CHECK(result.warnings[0].code == "SurfaceSharedAcrossCategories");

  const auto report = rejections_to_jsonl(result.rejections, result.warnings);
  CHECK(report.find(R"({"id":"uysa","line":3,"violations":["DuplicateId"],"warnings":[]})") != std::string::npos);
  CHECK(report.find(R"("warnings":["SurfaceSharedAcrossCategories"])") != std::string::npos);
}

TEST_CASE("JSONL format and CRLF input") {
  const std::string jsonl =
      R"({"id":"uysa","surface_hangul":"의사","category":"Occupation","polarity":"Neutral","slot":"NounPhrase","exclusion_flags":[]})"
      "\r\n"
      R"({"id":"haynye","surface_hangul":"해녀","category":"Occupation","polarity":"Neutral","slot":"NounPhrase","exclusion_flags":["GenderSpecific"]})"
      "\r\n";
  auto result = parse_lexicon(jsonl, LexiconFormat::Jsonl, "j");
  CHECK(result.lexicon.size() == 1);
  CHECK(result.rejections.size() == 1);
  CHECK(result.parsed_rows == 2);
  CHECK_THROWS_AS(parse_lexicon(R"({"id":"x"})", LexiconFormat::Jsonl, "j"), FormatError);
}

TEST_CASE("Lexicon constructor enforces invariants and sorts") {
  Lexicon lex("x", {entry("b", "의사", Category::Occupation, Polarity::Neutral, Slot::NounPhrase),
                    entry("a", "상냥", Category::Sentiment, Polarity::Positive, Slot::Predicate)});
  CHECK(lex.entries().front().id == "a");
  CHECK(lex.find("b") != nullptr);
  CHECK(lex.find("c") == nullptr);
  CHECK_THROWS_AS(Lexicon("x", {entry("a", "상냥", Category::Sentiment, Polarity::Positive, Slot::Predicate),
                                entry("a", "성실", Category::Sentiment, Polarity::Positive, Slot::Predicate)}),
                  Error);
  CHECK_THROWS_AS(Lexicon("x", {entry("a", "상냥", Category::Sentiment, Polarity::Neutral, Slot::Predicate)}),
                  Error);
}

TEST_CASE("shipped demo lexicon") {
  auto result = load_lexicon(tgbi::testing::repo_data("demo_lexicon.tsv"), LexiconFormat::Tsv);
  CHECK(result.lexicon.size() == 20);
  CHECK(result.rejections.size() == 3);
  CHECK(result.lexicon.count(Polarity::Positive) == 7);
  CHECK(result.lexicon.count(Polarity::Negative) == 6);
  CHECK(result.lexicon.count(Polarity::Neutral) == 7);
}

TEST_CASE("property: loading is deterministic and conserves rows") {
  std::mt19937_64 rng(1234);
  const std::vector<std::string> surfaces{"상냥", "의사", "선생님", "abc", "", "간호사", "성실", "거만"};
  const std::vector<std::string> ids{"a", "b", "c", "d", "e", "f", "Bad", "a-b"};
  const char* categories[] = {"Sentiment", "Occupation"};
  const char* polarities[] = {"Positive", "Negative", "Neutral"};
  const char* slots[] = {"Predicate", "NounPhrase"};
  const char* flags[] = {"", "", "", "Appearance", "HateTerm;Richness"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string content(kLexiconTsvHeader);
    content += '\n';
    const int rows = static_cast<int>(rng() % 12);
    for (int r = 0; r < rows; ++r) {
      content += ids[rng() % ids.size()] + '\t' + surfaces[rng() % surfaces.size()] + '\t' +
                 categories[rng() % 2] + '\t' + polarities[rng() % 3] + '\t' + slots[rng() % 2] + '\t' +
                 flags[rng() % 5] + '\n';
    }
    auto a = parse_lexicon(content, LexiconFormat::Tsv, "p");
    auto b = parse_lexicon(content, LexiconFormat::Tsv, "p");
    CHECK(a.lexicon.entries() == b.lexicon.entries());
    CHECK(a.lexicon.size() + a.rejections.size() == a.parsed_rows);
    CHECK(a.parsed_rows == static_cast<std::size_t>(rows));
    for (const auto& e : a.lexicon.entries()) CHECK(validate_entry(e).empty());
    CHECK(std::is_sorted(a.lexicon.entries().begin(), a.lexicon.entries().end(),
                         [](const auto& x, const auto& y) { return x.id < y.id; }));
  }
}

TEST_CASE("TSV writer round-trips through the loader") {
  auto lex = tgbi::testing::demo_lexicon();
  TempDir dir;
  utf8::write_file(dir / "lex.tsv", write_lexicon_tsv(lex.entries()));
  auto again = load_lexicon(dir / "lex.tsv", LexiconFormat::Tsv);
  CHECK(again.lexicon.entries() == lex.entries());
}
