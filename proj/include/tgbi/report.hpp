#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tgbi/metrics.hpp"

namespace tgbi {

/// Four-decimal rendering used everywhere a score is shown or persisted.
std::string format4(double value);

/// "0.4018 (0.2025, 0.0000)" : P_s (p_w, p_n).
std::string format_cell(const SubsetScore& score);

/// Rows (a)-(g) plus Average, one column per backend. Each backend's best
/// subset is bolded. A coverage line follows when any report is partial.
std::string render_markdown(std::span<const EvaluationReport> reports);
std::string render_csv(std::span<const EvaluationReport> reports);

/// {backend_id, run_id, subsets:[{name, n, p_w, p_m, p_n, score, counts?}],
///  tgbi, coverage}; reals at four decimals.
std::string report_to_json(const EvaluationReport& report);
EvaluationReport report_from_json(std::string_view json_text);
std::string reports_to_json(std::span<const EvaluationReport> reports);
std::vector<EvaluationReport> reports_from_json(std::string_view json_text);

struct ReportFiles {
  std::filesystem::path markdown;
  std::filesystem::path csv;
  std::filesystem::path json;
};

/// Writes <stem>.md, <stem>.csv and <stem>.json into `dir`. Throws
/// Error(InvariantViolation) for an empty report list.
ReportFiles emit_report(std::span<const EvaluationReport> reports, const std::filesystem::path& dir,
                        std::string_view stem = "comparison");

}  // namespace tgbi
