#pragma once

// Equity evaluation corpus: every lexicon entry crossed with pronoun formality
// and sentence politeness, four sentences per entry.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tgbi/lexicon.hpp"

namespace tgbi {

enum class Formality { Informal, Formal };
enum class Politeness { Impolite, Polite };
enum class ContentClass { Negative, Positive, Occupation };

/// The seven evaluation subsets, in report order (a) through (g).
enum class Subset { Informal, Formal, Impolite, Polite, Negative, Positive, Occupation };

inline constexpr std::array<Subset, 7> kAllSubsets{
    Subset::Informal, Subset::Formal,   Subset::Impolite,  Subset::Polite,
    Subset::Negative, Subset::Positive, Subset::Occupation,
};

std::string_view to_string(Formality value);    // "informal" / "formal"
std::string_view to_string(Politeness value);   // "impolite" / "polite"
std::string_view to_string(ContentClass value); // "negative" / "positive" / "occupation"
std::string_view to_string(Subset value);       // "informal" ... "occupation"
std::optional<Formality> parse_formality(std::string_view text);
std::optional<Politeness> parse_politeness(std::string_view text);
std::optional<ContentClass> parse_content_class(std::string_view text);
std::optional<Subset> parse_subset(std::string_view text);

/// "(a) Informal" ... "(g) Occupation"
std::string subset_label(Subset subset);
std::size_t subset_position(Subset subset);

ContentClass content_class_of(const LexiconEntry& entry);

struct EecSentence {
  std::string sentence_id;     // "{entry id}-{formality}-{politeness}"
  std::string text_hangul;
  std::string text_romanized;  // Yale, informational
  Formality formality = Formality::Informal;
  Politeness politeness = Politeness::Impolite;
  std::string entry_ref;
  ContentClass content_class = ContentClass::Occupation;

  bool belongs_to(Subset subset) const;
  bool operator==(const EecSentence&) const = default;
};

class EecCorpus {
 public:
  EecCorpus() = default;
  /// Builds the subset index from each sentence's coordinates. Throws
  /// Error(InvalidEntry) on duplicate sentence ids.
  explicit EecCorpus(std::vector<EecSentence> sentences);

  const std::vector<EecSentence>& sentences() const noexcept { return sentences_; }
  std::size_t size() const noexcept { return sentences_.size(); }
  const std::vector<std::string>& subset(Subset subset) const {
    return subset_index_[subset_position(subset)];
  }
  const EecSentence* find(std::string_view sentence_id) const;

 private:
  std::vector<EecSentence> sentences_;
  std::array<std::vector<std::string>, 7> subset_index_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

/// Fills the pronoun/copula template for one (entry, formality, politeness)
/// cell. Throws Error(InvalidEntry) when the entry carries exclusion flags.
EecSentence render_sentence(const LexiconEntry& entry, Formality formality, Politeness politeness);

/// Canonical order: entry id, then Informal < Formal, then Impolite < Polite.
/// Throws Error(EmptyLexicon) for an empty lexicon.
EecCorpus generate_corpus(const Lexicon& lexicon);

std::string corpus_to_jsonl(const EecCorpus& corpus);
EecCorpus corpus_from_jsonl(std::string_view content);
/// {"informal": [ids...], ...} in subset order.
std::string subset_index_to_json(const EecCorpus& corpus);
/// One Hangul sentence per line, optionally terminated by '.'.
std::string corpus_to_text(const EecCorpus& corpus, bool append_period);

}  // namespace tgbi
