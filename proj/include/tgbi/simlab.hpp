#pragma once

// Synthetic translation systems with controlled gender behaviour. Outputs use
// the classifier's own tokens, so classification recovers the intended label.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "tgbi/eec.hpp"
#include "tgbi/gender.hpp"
#include "tgbi/metrics.hpp"
#include "tgbi/translator.hpp"

namespace tgbi::simlab {

enum class PolicyKind {
  FixedPortions,            // one target for every sentence, drawn per sentence
  PerLexiconDeterministic,  // one gender per lexicon entry, like a deterministic MT system
  PerSubsetPortions,        // per content class target, drawn per sentence
};

std::string_view to_string(PolicyKind kind);
std::optional<PolicyKind> parse_policy_kind(std::string_view text);

struct TargetPortions {
  double p_w = 0.0;
  double p_m = 0.0;
  double p_n = 1.0;
};

/// Scopes are "all", "negative", "positive", "occupation"; a content-class
/// scope overrides "all".
struct SyntheticPolicy {
  PolicyKind kind = PolicyKind::FixedPortions;
  std::map<std::string, TargetPortions> targets;
  std::uint64_t seed = 0;

  /// Error(InvariantViolation) for a target off the simplex; Error(ConfigError)
  /// for unknown scopes or a content class with no applicable target.
  void validate() const;
  const TargetPortions& target_for(ContentClass content) const;
};

SyntheticPolicy all_neutral_policy();
/// Positive entries always female, negative always male, occupations split
/// 50/50 by entry. Deterministic per lexicon entry.
SyntheticPolicy contrast_policy(std::uint64_t seed = 0);

SyntheticPolicy policy_from_json(std::string_view json_text);
SyntheticPolicy load_policy(const std::filesystem::path& path);
std::string policy_to_json(const SyntheticPolicy& policy);

/// Seeded uniform draw in [0,1) from a string key; stable across platforms.
double unit_hash(std::uint64_t seed, std::string_view key);

Gender synth_gender(const EecSentence& sentence, const SyntheticPolicy& policy);

/// Lexicon id with hyphens removed, so the gloss is a single token.
std::string gloss_for(std::string_view entry_ref);
/// "She is X." / "He is X." / "The person is X."
std::string render_output(Gender gender, std::string_view gloss);

std::string synth_translate(const EecSentence& sentence, const SyntheticPolicy& policy);

class SyntheticTranslator : public Translator {
 public:
  explicit SyntheticTranslator(SyntheticPolicy policy);
  std::string translate(const EecSentence& sentence, const std::string& source) override;

 private:
  SyntheticPolicy policy_;
};

/// Scores all seven subsets after routing synthetic outputs through the
/// classifier.
EvaluationReport run_subset_demo(const EecCorpus& corpus, const SyntheticPolicy& policy,
                                 const GenderWordlists& lists = default_wordlists(),
                                 std::string backend_id = "simlab");

}  // namespace tgbi::simlab
