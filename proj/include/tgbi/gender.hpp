#pragma once

// Rule-based gender labelling of English MT output.
//
// The whole output is scanned for gendered tokens. Output naming both genders
// (e.g. "She is a doctor. / He is a doctor.") is labelled Neutral: the system
// did not commit to either.

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tgbi {

enum class Gender { Female, Male, Neutral };

std::string_view to_string(Gender value);  // "F" / "M" / "N"
std::string_view long_name(Gender value);  // "Female" / "Male" / "Neutral"

struct GenderWordlists {
  std::set<std::string> female;
  std::set<std::string> male;
  std::set<std::string> neutral_markers;  // may be multi-word ("the person")

  /// Female and male swapped; neutral markers untouched.
  GenderWordlists swapped() const;
  /// Throws Error(ConfigError) when the lists overlap or contain entries that
  /// are not lowercase/trimmed.
  void validate() const;

  bool operator==(const GenderWordlists&) const = default;
};

/// Core tokens plus plural, possessive and reflexive forms.
GenderWordlists default_wordlists();
/// Only the example tokens: she/her/woman/girl, he/him/man/guy/boy, "the person".
GenderWordlists paper_exact_wordlists();

/// JSON {female:[], male:[], neutral_markers:[]}; missing keys stay empty.
GenderWordlists wordlists_from_json(std::string_view json_text);
GenderWordlists load_wordlists(const std::filesystem::path& path);
std::string wordlists_to_json(const GenderWordlists& lists);

enum class EvidenceKind { Female, Male, NeutralMarker };

struct Evidence {
  std::string token;    // lowercased form as listed
  std::size_t offset;   // byte offset into the classified text
  EvidenceKind kind;

  bool operator==(const Evidence&) const = default;
};

struct GenderLabel {
  Gender value = Gender::Neutral;
  std::vector<Evidence> evidence;

  bool operator==(const GenderLabel&) const = default;
};

struct Token {
  std::string text;  // lowercased
  std::size_t offset;
};

/// Lowercases and splits on anything that is not a letter, so clitics split at
/// the apostrophe ("He's" -> "he", "s"). Bytes >= 0x80 count as letters.
std::vector<Token> tokenize(std::string_view text);

/// Throws Error(EmptyInput) for empty or all-whitespace text.
GenderLabel classify(std::string_view output_text, const GenderWordlists& lists);

}  // namespace tgbi
