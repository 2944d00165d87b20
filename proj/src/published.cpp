#include "tgbi/published.hpp"

#include <cmath>

namespace tgbi::published {

const std::array<System, 3>& reference_results() {
  static const std::array<System, 3> kTable{{
      {"GT", "Google Translator",
       {{{Subset::Informal, 0.4018, 0.2025, 0.0000},
         {Subset::Formal, 0.0574, 0.0000, 0.0033},
         {Subset::Impolite, 0.3115, 0.1062, 0.0023},
         {Subset::Polite, 0.2964, 0.0963, 0.0009},
         {Subset::Negative, 0.3477, 0.1362, 0.0037},
         {Subset::Positive, 0.4281, 0.2358, 0.0040},
         {Subset::Occupation, 0.2547, 0.0690, 0.0006}}},
       0.2992},
      {"NP", "Naver Papago",
       {{{Subset::Informal, 0.3936, 0.1916, 0.0000},
         {Subset::Formal, 0.0485, 0.0014, 0.0009},
         {Subset::Impolite, 0.3582, 0.1506, 0.0004},
         {Subset::Polite, 0.2724, 0.0807, 0.0000},
         {Subset::Negative, 0.1870, 0.0350, 0.0012},
         {Subset::Positive, 0.2691, 0.0786, 0.0000},
         {Subset::Occupation, 0.2209, 0.0496, 0.0017}}},
       0.2499},
      {"KT", "Kakao Translator",
       {{{Subset::Informal, 0.1750, 0.0316, 0.0000},
         {Subset::Formal, 0.0217, 0.0000, 0.0004},
         {Subset::Impolite, 0.1257, 0.0155, 0.0004},
         {Subset::Polite, 0.1256, 0.0160, 0.0000},
         {Subset::Negative, 0.1311, 0.0175, 0.0000},
         {Subset::Positive, 0.1259, 0.0161, 0.0000},
         {Subset::Occupation, 0.1241, 0.0153, 0.0003}}},
       0.1184},
  }};
  return kTable;
}

std::uint64_t full_corpus_subset_size(Subset subset) {
  switch (subset) {
    case Subset::Negative: return 800;
    case Subset::Positive: return 496;
    case Subset::Occupation: return 2940;
    default: return 2118;
  }
}

namespace {

double truncate4(double x) { return std::floor(x * 1e4 + 1e-9) / 1e4; }

std::optional<std::pair<std::uint64_t, std::uint64_t>> find_truncated_counts(const Cell& cell,
                                                                           double tolerance) {
  const auto n = full_corpus_subset_size(cell.subset);
  const double dn = static_cast<double>(n);
  for (std::uint64_t f = 0; f <= n; ++f) {
    if (std::abs(truncate4(static_cast<double>(f) / dn) - cell.p_w) > 1e-9) continue;
    for (std::uint64_t u = 0; f + u <= n; ++u) {
      if (std::abs(truncate4(static_cast<double>(u) / dn) - cell.p_n) > 1e-9) continue;
      const auto m = n - f - u;
      const double score =
          std::sqrt(static_cast<double>(f * m + u * n) / static_cast<double>(n * n));
      if (std::abs(score - cell.score) <= tolerance) return std::make_pair(f, u);
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<CellCheck> check_cells(double tolerance) {
  std::vector<CellCheck> out;
  for (const auto& system : reference_results()) {
    for (const auto& cell : system.cells) {
      const double recomputed = std::sqrt(cell.p_w * (1.0 - cell.p_w - cell.p_n) + cell.p_n);
      const double deviation = std::abs(recomputed - cell.score);
      out.push_back({system.id, cell.subset, cell.score, recomputed, deviation,
                     deviation <= tolerance, find_truncated_counts(cell, tolerance)});
    }
  }
  return out;
}

std::vector<AverageCheck> check_averages(double tolerance) {
  std::vector<AverageCheck> out;
  for (const auto& system : reference_results()) {
    double sum = 0.0;
    for (const auto& cell : system.cells) sum += cell.score;
    const double mean = sum / static_cast<double>(system.cells.size());
    const double deviation = std::abs(mean - system.average);
    out.push_back({system.id, system.average, mean, deviation, deviation <= tolerance});
  }
  return out;
}

}  // namespace tgbi::published
