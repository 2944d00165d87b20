#include <doctest.h>

#include <set>

#include "test_support.hpp"
#include "tgbi/eec.hpp"
#include "tgbi/error.hpp"
#include "tgbi/hangul.hpp"

using namespace tgbi;

TEST_CASE("batchim_final against syllables of known orthography") {
  // hand-curated: syllables with and without a written final consonant
  const std::vector<std::pair<char32_t, bool>> known{
      {U'사', false}, {U'님', true}, {U'의', false}, {U'생', true}, {U'간', true},
      {U'호', false}, {U'원', true}, {U'관', true},  {U'자', false}, {U'적', true},
      {U'야', false}, {U'가', false}, {U'힣', true},  {U'냥', true},  {U'해', false},
  };
  for (auto [syllable, expected] : known) CHECK(hangul::batchim_final(syllable) == expected);
  CHECK(static_cast<std::uint32_t>(U'사') == 0xC0AC);
  CHECK(static_cast<std::uint32_t>(U'님') == 0xB2D8);
}

TEST_CASE("batchim_final rejects non-syllables") {
  for (char32_t c : {U'a', U'ㄱ', char32_t{0xABFF}, char32_t{0xD7A4}}) {
    try {
      hangul::batchim_final(c);
      FAIL("expected NotHangulSyllable");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotHangulSyllable);
    }
  }
}

TEST_CASE("render_sentence matches the copula fixture table") {
  const auto rows = tgbi::testing::read_table(tgbi::testing::test_data("copula_fixtures.tsv"));
  REQUIRE(rows.size() == 12);
  for (const auto& row : rows) {
    LexiconEntry e{row[0], row[1],
                   row[2] == "Predicate" ? Category::Sentiment : Category::Occupation,
                   row[2] == "Predicate" ? Polarity::Positive : Polarity::Neutral,
                   *parse_slot(row[2]), {}};
    auto s = render_sentence(e, *parse_formality(row[3]), *parse_politeness(row[4]));
    INFO(row[0], " ", row[3], " ", row[4]);
    CHECK(s.text_hangul == row[5]);
    CHECK(s.text_romanized == row[6]);
    CHECK(s.sentence_id == row[0] + "-" + row[3] + "-" + row[4]);
    CHECK(s.entry_ref == row[0]);
  }
}

TEST_CASE("render_sentence refuses flagged entries") {
  LexiconEntry e{"haynye", "해녀", Category::Occupation, Polarity::Neutral, Slot::NounPhrase,
                 {ExclusionFlag::GenderSpecific}};
  try {
    render_sentence(e, Formality::Informal, Politeness::Impolite);
    FAIL("expected InvalidEntry");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::InvalidEntry);
  }
}

TEST_CASE("sentence invariants hold over the demo corpus") {
  const auto lexicon = tgbi::testing::demo_lexicon();
  const auto corpus = generate_corpus(lexicon);
  for (const auto& s : corpus.sentences()) {
    const std::string pronoun = s.formality == Formality::Informal ? "걔는 " : "그 사람은 ";
    CHECK(s.text_hangul.rfind(pronoun, 0) == 0);
    const auto rest = s.text_hangul.substr(pronoun.size());
    CHECK(rest.find("걔는") == std::string::npos);
    CHECK(rest.find("그 사람은") == std::string::npos);
    const bool ends_yo = s.text_hangul.size() >= 3 && s.text_hangul.substr(s.text_hangul.size() - 3) == "요";
    CHECK(ends_yo == (s.politeness == Politeness::Polite));
    const auto* entry = lexicon.find(s.entry_ref);
    REQUIRE(entry != nullptr);
    CHECK(s.text_hangul.find(entry->surface_hangul) != std::string::npos);
    CHECK((s.content_class == ContentClass::Occupation) == (entry->category == Category::Occupation));
  }
}

TEST_CASE("generate_corpus sizes, order and partitions") {
  SUBCASE("demo lexicon") {
    const auto corpus = tgbi::testing::demo_corpus();
    CHECK(corpus.size() == 80);
    for (auto [a, b] : {std::pair{Subset::Informal, Subset::Formal}, std::pair{Subset::Impolite, Subset::Polite}}) {
      CHECK(corpus.subset(a).size() == corpus.subset(b).size());
      CHECK(corpus.subset(a).size() + corpus.subset(b).size() == 80);
    }
    CHECK(corpus.subset(Subset::Negative).size() + corpus.subset(Subset::Positive).size() +
              corpus.subset(Subset::Occupation).size() ==
          80);
    std::map<std::string, int> membership;
    for (auto subset : kAllSubsets) {
      std::set<std::string> unique(corpus.subset(subset).begin(), corpus.subset(subset).end());
      CHECK(unique.size() == corpus.subset(subset).size());
      for (const auto& id : corpus.subset(subset)) ++membership[id];
    }
    CHECK(membership.size() == 80);
    for (const auto& [id, count] : membership) CHECK(count == 3);
  }
  SUBCASE("one entry gives one sentence per cell in canonical order") {
    Lexicon lex("one", {{"uysa", "의사", Category::Occupation, Polarity::Neutral, Slot::NounPhrase, {}}});
    const auto corpus = generate_corpus(lex);
    REQUIRE(corpus.size() == 4);
    CHECK(corpus.sentences()[0].sentence_id == "uysa-informal-impolite");
    CHECK(corpus.sentences()[1].sentence_id == "uysa-informal-polite");
    CHECK(corpus.sentences()[2].sentence_id == "uysa-formal-impolite");
    CHECK(corpus.sentences()[3].sentence_id == "uysa-formal-polite");
    CHECK(corpus.sentences()[2].text_hangul == "그 사람은 의사야");
  }
  SUBCASE("empty lexicon") {
    try {
      generate_corpus(Lexicon{});
      FAIL("expected EmptyLexicon");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EmptyLexicon);
    }
  }
}

TEST_CASE("corpus serialization is deterministic and reloadable") {
  const auto a = tgbi::testing::demo_corpus();
  const auto b = tgbi::testing::demo_corpus();
  CHECK(corpus_to_jsonl(a) == corpus_to_jsonl(b));
  CHECK(subset_index_to_json(a) == subset_index_to_json(b));
  const auto reloaded = corpus_from_jsonl(corpus_to_jsonl(a));
  CHECK(reloaded.sentences() == a.sentences());
  for (auto s : kAllSubsets) CHECK(reloaded.subset(s) == a.subset(s));

  const auto text = corpus_to_text(a, false);
  CHECK(text.rfind("걔는 정직해\n", 0) == 0);
  CHECK(corpus_to_text(a, true).rfind("걔는 정직해.\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 80);
}

TEST_CASE("subset labels") {
  CHECK(subset_label(Subset::Informal) == "(a) Informal");
  CHECK(subset_label(Subset::Occupation) == "(g) Occupation");
  CHECK(parse_subset("polite") == Subset::Polite);
  CHECK_FALSE(parse_subset("Polite").has_value());
}
