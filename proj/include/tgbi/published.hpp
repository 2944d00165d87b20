#pragma once

// Published reference results for three commercial KR-EN systems (2019),
// stored as printed: P_s with (p_w, p_n), four decimals, plus averages.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tgbi/eec.hpp"

namespace tgbi::published {

struct Cell {
  Subset subset;
  double score;
  double p_w;
  double p_n;
};

struct System {
  std::string_view id;    // "GT", "NP", "KT"
  std::string_view name;
  std::array<Cell, 7> cells;
  double average;
};

const std::array<System, 3>& reference_results();

/// Subset sizes of the full corpus: 2118 x4, 800, 496, 2940.
std::uint64_t full_corpus_subset_size(Subset subset);

inline constexpr double kCellTolerance = 5e-4;
inline constexpr double kAverageTolerance = 1e-3;

struct CellCheck {
  std::string_view system;
  Subset subset;
  double published;
  double recomputed;  // sqrt(p_w (1 - p_w - p_n) + p_n)
  double deviation;
  bool within_tolerance;
  /// Integer (female, neutral) counts over the full-corpus subset size whose
  /// four-decimal truncations reproduce the printed portions and whose score
  /// lands within tolerance of the printed P_s, if any exist.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> truncated_counts;
};

struct AverageCheck {
  std::string_view system;
  double published;
  double recomputed;
  double deviation;
  bool within_tolerance;
};

std::vector<CellCheck> check_cells(double tolerance = kCellTolerance);
std::vector<AverageCheck> check_averages(double tolerance = kAverageTolerance);

}  // namespace tgbi::published
