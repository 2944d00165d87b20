#pragma once

// Sentiment and occupation word lists that feed corpus generation.
//
// Prejudice screening is recorded in the input data as exclusion flags; a row
// carrying any flag is rejected at load time and reported, never generated.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tgbi {

enum class Category { Sentiment, Occupation };
enum class Polarity { Positive, Negative, Neutral };
enum class Slot { Predicate, NounPhrase };
enum class ExclusionFlag {
  Appearance,
  Richness,
  SexualOrientation,
  Disability,
  AcademicBackground,
  OccupationOrStatus,
  GenderSpecific,
  HateTerm,
};

std::string_view to_string(Category value);
std::string_view to_string(Polarity value);
std::string_view to_string(Slot value);
std::string_view to_string(ExclusionFlag value);

std::optional<Category> parse_category(std::string_view text);
std::optional<Polarity> parse_polarity(std::string_view text);
std::optional<Slot> parse_slot(std::string_view text);
std::optional<ExclusionFlag> parse_exclusion_flag(std::string_view text);

struct LexiconEntry {
  std::string id;              // Yale-romanized slug, e.g. "sangnyang"
  std::string surface_hangul;  // slot-ready form: predicate stem or bare noun
  Category category = Category::Sentiment;
  Polarity polarity = Polarity::Neutral;
  Slot slot = Slot::Predicate;
  std::set<ExclusionFlag> exclusion_flags;

  bool operator==(const LexiconEntry&) const = default;
};

enum class ViolationCode {
  InvalidId,
  EmptySurface,
  NoHangulSyllable,
  NounPhraseMustEndInSyllable,
  OccupationMustBeNeutral,
  OccupationMustBeNounPhrase,
  SentimentMustBePolar,
  ExcludedCategory,
  DuplicateId,
  DuplicateSurface,
};

struct Violation {
  ViolationCode code;
  std::optional<ExclusionFlag> flag;  // set only for ExcludedCategory

  /// "OccupationMustBeNeutral", "ExcludedCategory(Appearance)", ...
  std::string to_string() const;
  bool operator==(const Violation&) const = default;
};

/// Total function: empty result iff the entry may be included in a corpus.
std::vector<Violation> validate_entry(const LexiconEntry& entry);

/// Immutable, id-sorted collection of valid entries.
class Lexicon {
 public:
  Lexicon() = default;
  /// Throws Error(InvalidEntry) if any entry fails validation, an id repeats,
  /// or a surface form repeats within a category.
  Lexicon(std::string source_name, std::vector<LexiconEntry> entries);

  const std::vector<LexiconEntry>& entries() const noexcept { return entries_; }
  const std::string& source_name() const noexcept { return source_name_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t count(Polarity polarity) const;
  const std::map<Polarity, std::size_t>& counts() const noexcept { return counts_; }
  const LexiconEntry* find(std::string_view id) const;

 private:
  std::string source_name_;
  std::vector<LexiconEntry> entries_;
  std::map<Polarity, std::size_t> counts_;
};

struct Rejection {
  std::size_t line = 0;
  std::string id;
  std::vector<Violation> violations;
};

/// Non-fatal observations, e.g. a surface form shared by a sentiment entry
/// and an occupation entry.
struct LexiconWarning {
  std::size_t line = 0;
  std::string id;
  std::string code;
};

struct LexiconLoadResult {
  Lexicon lexicon;
  std::vector<Rejection> rejections;
  std::vector<LexiconWarning> warnings;
  std::size_t parsed_rows = 0;
};

enum class LexiconFormat { Tsv, Jsonl };

std::optional<LexiconFormat> parse_lexicon_format(std::string_view text);

/// TSV columns: id, surface_hangul, category, polarity, slot, exclusion_flags
/// (semicolon-separated, may be empty). A header row is required.
inline constexpr std::string_view kLexiconTsvHeader =
    "id\tsurface_hangul\tcategory\tpolarity\tslot\texclusion_flags";

LexiconLoadResult parse_lexicon(std::string_view content, LexiconFormat format,
                                std::string source_name);
LexiconLoadResult load_lexicon(const std::filesystem::path& path, LexiconFormat format);

std::string write_lexicon_tsv(const std::vector<LexiconEntry>& entries);

/// One JSON object per line: {line, id?, violations[], warnings[]}.
std::string rejections_to_jsonl(const std::vector<Rejection>& rejections,
                                const std::vector<LexiconWarning>& warnings);

}  // namespace tgbi
