#pragma once

// Subset score and translation gender bias index.
//
//   P_s  = sqrt(p_w * p_m + p_n)        for one sentence subset
//   TGBI = unweighted mean of P_s over the seven subsets
//
// Portions are carried as integer counts until the final square root.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tgbi/eec.hpp"
#include "tgbi/gender.hpp"

namespace tgbi {

inline constexpr double kPortionSumTolerance = 1e-9;
inline constexpr double kRecomputeTolerance = 1e-12;

struct LabelCounts {
  std::uint64_t female = 0;
  std::uint64_t male = 0;
  std::uint64_t neutral = 0;

  std::uint64_t total() const noexcept { return female + male + neutral; }
  void add(Gender g) noexcept;
  LabelCounts& operator+=(const LabelCounts& other) noexcept;
  bool operator==(const LabelCounts&) const = default;
};

struct PortionTriple {
  double p_w = 0.0;
  double p_m = 0.0;
  double p_n = 0.0;
  std::uint64_t n = 0;
  std::optional<LabelCounts> counts;  // present when built from labels

  /// Throws Error(EmptySubset) when counts.total() == 0.
  static PortionTriple from_counts(const LabelCounts& counts);
  /// Throws Error(InvariantViolation) unless the portions lie in [0,1] and sum
  /// to 1 within kPortionSumTolerance.
  static PortionTriple from_values(double p_w, double p_m, double p_n, std::uint64_t n = 1);
};

PortionTriple portions_from_labels(std::span<const GenderLabel> labels);
PortionTriple portions_from_genders(std::span<const Gender> genders);

/// sqrt(p_w * p_m + p_n). With counts present the radicand is formed exactly
/// as (f*m + u*n) / n^2 in integers.
double subset_score(const PortionTriple& portions);
/// Validates the portions first (Error(InvariantViolation)).
double subset_score(double p_w, double p_m, double p_n);

struct SubsetScore {
  Subset subset = Subset::Informal;
  PortionTriple portions;
  double score = 0.0;
};

SubsetScore score_subset(Subset subset, const PortionTriple& portions);

struct EvaluationReport {
  std::string backend_id;
  std::string run_id;
  std::vector<SubsetScore> subsets;  // (a)..(g)
  double tgbi = 0.0;
  double coverage = 1.0;
};

/// Requires exactly the seven subsets, each nonempty: Error(MissingSubset),
/// Error(EmptySubset), Error(InvariantViolation) on duplicates.
EvaluationReport compute_tgbi(std::vector<SubsetScore> subset_scores, std::string backend_id,
                              double coverage = 1.0);

/// Scores every subset of the corpus from per-sentence labels. Sentences with
/// no label (failed translations) are left out of their subsets.
EvaluationReport evaluate_labels(const EecCorpus& corpus,
                                 const std::vector<std::optional<Gender>>& labels,
                                 std::string backend_id);

struct BoundsReport {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double min_score = 0.0;
  double max_score = 0.0;
  double edge_max_score = 0.0;
  double edge_argmax_p_w = 0.0;
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/// Property run over the 2-simplex: boundedness on seeded uniform samples,
/// vertex values, the z=0 edge maximum, symmetry and fixed-p_n optimality.
BoundsReport verify_bounds(std::uint64_t samples, std::uint64_t seed);

}  // namespace tgbi
