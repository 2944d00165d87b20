#include "tgbi/report.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "tgbi/error.hpp"
#include "tgbi/utf8.hpp"

namespace tgbi {

namespace {

// Values go through their printed form so that JSON written here and read
// back formats identically.
double rounded4(double value) { return std::stod(format4(value)); }

std::string with_thousands(std::uint64_t n) {
  auto digits = std::to_string(n);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out.push_back(',');
    out.push_back(digits[i]);
  }
  return out;
}

// Ties at the maximum are all marked.
double best_score(const EvaluationReport& report) {
  double best = 0.0;
  for (const auto& s : report.subsets) best = std::max(best, rounded4(s.score));
  return best;
}

nlohmann::ordered_json to_json_object(const EvaluationReport& report) {
  auto subsets = nlohmann::ordered_json::array();
  for (const auto& s : report.subsets) {
    nlohmann::ordered_json obj{{"name", to_string(s.subset)},
                               {"n", s.portions.n},
                               {"p_w", rounded4(s.portions.p_w)},
                               {"p_m", rounded4(s.portions.p_m)},
                               {"p_n", rounded4(s.portions.p_n)},
                               {"score", rounded4(s.score)}};
    if (s.portions.counts) {
      obj["counts"] = {{"female", s.portions.counts->female},
                       {"male", s.portions.counts->male},
                       {"neutral", s.portions.counts->neutral}};
    }
    subsets.push_back(std::move(obj));
  }
  nlohmann::ordered_json obj;
  obj["backend_id"] = report.backend_id;
  if (!report.run_id.empty()) obj["run_id"] = report.run_id;
  obj["subsets"] = std::move(subsets);
  obj["tgbi"] = rounded4(report.tgbi);
  obj["coverage"] = rounded4(report.coverage);
  return obj;
}

EvaluationReport from_json_object(const nlohmann::json& obj) {
  EvaluationReport report;
  report.backend_id = obj.at("backend_id").get<std::string>();
  report.run_id = obj.value("run_id", std::string{});
  for (const auto& s : obj.at("subsets")) {
    const auto name = s.at("name").get<std::string>();
    auto subset = parse_subset(name);
    if (!subset) throw Error(ErrorCode::FormatError, "unknown subset '" + name + "'");
    SubsetScore score;
    score.subset = *subset;
    score.portions.n = s.at("n").get<std::uint64_t>();
    score.portions.p_w = s.at("p_w").get<double>();
    score.portions.p_m = s.at("p_m").get<double>();
    score.portions.p_n = s.at("p_n").get<double>();
    if (auto it = s.find("counts"); it != s.end()) {
      score.portions.counts = LabelCounts{it->at("female").get<std::uint64_t>(),
                                          it->at("male").get<std::uint64_t>(),
                                          it->at("neutral").get<std::uint64_t>()};
    }
    score.score = s.at("score").get<double>();
    report.subsets.push_back(score);
  }
  report.tgbi = obj.at("tgbi").get<double>();
  report.coverage = obj.value("coverage", 1.0);
  return report;
}

}  // namespace

std::string format4(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

std::string format_cell(const SubsetScore& score) {
  return format4(score.score) + " (" + format4(score.portions.p_w) + ", " +
         format4(score.portions.p_n) + ")";
}

std::string render_markdown(std::span<const EvaluationReport> reports) {
  std::string out = "| Sentence set [size] |";
  for (const auto& r : reports) out += " " + r.backend_id + " |";
  out += "\n|---|";
  for (std::size_t i = 0; i < reports.size(); ++i) out += "---|";
  out += '\n';

  std::vector<double> best;
  for (const auto& r : reports) best.push_back(best_score(r));

  for (std::size_t row = 0; row < kAllSubsets.size(); ++row) {
    const auto n = reports.empty() || reports.front().subsets.size() <= row
                       ? 0
                       : reports.front().subsets[row].portions.n;
    out += "| " + subset_label(kAllSubsets[row]) + " [" + with_thousands(n) + "] |";
    for (std::size_t c = 0; c < reports.size(); ++c) {
      const auto& score = reports[c].subsets.at(row);
      const auto cell = format_cell(score);
      out += rounded4(score.score) == best[c] ? " **" + cell + "** |" : " " + cell + " |";
    }
    out += '\n';
  }
  out += "| **Average** |";
  for (const auto& r : reports) out += " " + format4(r.tgbi) + " |";
  out += '\n';

  bool partial = false;
  for (const auto& r : reports) partial = partial || rounded4(r.coverage) < 1.0;
  if (partial) {
    out += "\nCoverage:";
    for (std::size_t c = 0; c < reports.size(); ++c) {
      char pct[32];
      std::snprintf(pct, sizeof pct, "%.2f%%", reports[c].coverage * 100.0);
      out += (c == 0 ? " " : ", ") + reports[c].backend_id + " " + pct;
    }
    out += '\n';
  }
  return out;
}

std::string render_csv(std::span<const EvaluationReport> reports) {
  std::string out = "backend_id,subset,n,p_w,p_m,p_n,score\n";
  for (const auto& r : reports) {
    for (const auto& s : r.subsets) {
      out += r.backend_id + "," + std::string(to_string(s.subset)) + "," + std::to_string(s.portions.n) +
             "," + format4(s.portions.p_w) + "," + format4(s.portions.p_m) + "," +
             format4(s.portions.p_n) + "," + format4(s.score) + "\n";
    }
    out += r.backend_id + ",average,,,,," + format4(r.tgbi) + "\n";
  }
  return out;
}

std::string report_to_json(const EvaluationReport& report) {
  return to_json_object(report).dump(2) + '\n';
}

EvaluationReport report_from_json(std::string_view json_text) {
  try {
    return from_json_object(nlohmann::json::parse(json_text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::FormatError, std::string("report JSON: ") + e.what());
  }
}

std::string reports_to_json(std::span<const EvaluationReport> reports) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(to_json_object(r));
  return arr.dump(2) + '\n';
}

std::vector<EvaluationReport> reports_from_json(std::string_view json_text) {
  try {
    std::vector<EvaluationReport> out;
    for (const auto& obj : nlohmann::json::parse(json_text)) out.push_back(from_json_object(obj));
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::FormatError, std::string("report JSON: ") + e.what());
  }
}

ReportFiles emit_report(std::span<const EvaluationReport> reports, const std::filesystem::path& dir,
                        std::string_view stem) {
  if (reports.empty()) throw Error(ErrorCode::InvariantViolation, "no reports to emit");
  ReportFiles files{dir / (std::string(stem) + ".md"), dir / (std::string(stem) + ".csv"),
                    dir / (std::string(stem) + ".json")};
  utf8::write_file(files.markdown, render_markdown(reports));
  utf8::write_file(files.csv, render_csv(reports));
  utf8::write_file(files.json, reports_to_json(reports));
  return files;
}

}  // namespace tgbi
