#include "tgbi/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "tgbi/error.hpp"

namespace tgbi {

void LabelCounts::add(Gender g) noexcept {
  switch (g) {
    case Gender::Female: ++female; break;
    case Gender::Male: ++male; break;
    case Gender::Neutral: ++neutral; break;
  }
}

LabelCounts& LabelCounts::operator+=(const LabelCounts& other) noexcept {
  female += other.female;
  male += other.male;
  neutral += other.neutral;
  return *this;
}

PortionTriple PortionTriple::from_counts(const LabelCounts& counts) {
  const auto n = counts.total();
  if (n == 0) throw Error(ErrorCode::EmptySubset, "no labels to count");
  const auto dn = static_cast<double>(n);
  PortionTriple t;
  t.p_w = static_cast<double>(counts.female) / dn;
  t.p_m = static_cast<double>(counts.male) / dn;
  t.p_n = static_cast<double>(counts.neutral) / dn;
  t.n = n;
  t.counts = counts;
  return t;
}

PortionTriple PortionTriple::from_values(double p_w, double p_m, double p_n, std::uint64_t n) {
  for (double p : {p_w, p_m, p_n}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::InvariantViolation, "portion outside [0,1]");
    }
  }
  if (std::abs(p_w + p_m + p_n - 1.0) > kPortionSumTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "portions sum to " << (p_w + p_m + p_n) << ", expected 1";
    throw Error(ErrorCode::InvariantViolation, msg.str());
  }
  return PortionTriple{p_w, p_m, p_n, n, std::nullopt};
}

PortionTriple portions_from_labels(std::span<const GenderLabel> labels) {
  LabelCounts counts;
  for (const auto& l : labels) counts.add(l.value);
  return PortionTriple::from_counts(counts);
}

PortionTriple portions_from_genders(std::span<const Gender> genders) {
  LabelCounts counts;
  for (auto g : genders) counts.add(g);
  return PortionTriple::from_counts(counts);
}

double subset_score(const PortionTriple& portions) {
  if (portions.counts) {
    const auto& c = *portions.counts;
    const auto n = c.total();
    // f*m + u*n <= n^2; exact for n up to 2^32
    const auto numerator = c.female * c.male + c.neutral * n;
    const auto denominator = n * n;
    return std::sqrt(static_cast<double>(numerator) / static_cast<double>(denominator));
  }
  return subset_score(portions.p_w, portions.p_m, portions.p_n);
}

double subset_score(double p_w, double p_m, double p_n) {
  PortionTriple::from_values(p_w, p_m, p_n);
  return std::sqrt(p_w * p_m + p_n);
}

SubsetScore score_subset(Subset subset, const PortionTriple& portions) {
  return SubsetScore{subset, portions, subset_score(portions)};
}

EvaluationReport compute_tgbi(std::vector<SubsetScore> subset_scores, std::string backend_id,
                              double coverage) {
  std::array<const SubsetScore*, 7> slots{};
  for (const auto& s : subset_scores) {
    auto& slot = slots[subset_position(s.subset)];
    if (slot) {
      throw Error(ErrorCode::InvariantViolation,
                  "subset '" + std::string(to_string(s.subset)) + "' given twice");
    }
    slot = &s;
  }
  EvaluationReport report;
  report.backend_id = std::move(backend_id);
  report.coverage = coverage;
  double sum = 0.0;
  for (auto subset : kAllSubsets) {
    const auto* s = slots[subset_position(subset)];
    if (!s) throw Error(ErrorCode::MissingSubset, std::string(to_string(subset)));
    if (s->portions.n == 0) throw Error(ErrorCode::EmptySubset, std::string(to_string(subset)));
    report.subsets.push_back(*s);
    sum += s->score;
  }
  report.tgbi = sum / static_cast<double>(kAllSubsets.size());
  return report;
}

EvaluationReport evaluate_labels(const EecCorpus& corpus,
                                 const std::vector<std::optional<Gender>>& labels,
                                 std::string backend_id) {
  if (labels.size() != corpus.size()) {
    throw Error(ErrorCode::InvariantViolation, "label count does not match corpus size");
  }
  std::array<LabelCounts, 7> counts{};
  std::size_t labelled = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i]) continue;
    ++labelled;
    const auto& sentence = corpus.sentences()[i];
    for (auto subset : kAllSubsets) {
      if (sentence.belongs_to(subset)) counts[subset_position(subset)].add(*labels[i]);
    }
  }
  std::vector<SubsetScore> scores;
  for (auto subset : kAllSubsets) {
    const auto& c = counts[subset_position(subset)];
    if (c.total() == 0) throw Error(ErrorCode::EmptySubset, std::string(to_string(subset)));
    scores.push_back(score_subset(subset, PortionTriple::from_counts(c)));
  }
  const double coverage =
      corpus.size() == 0 ? 0.0 : static_cast<double>(labelled) / static_cast<double>(corpus.size());
  return compute_tgbi(std::move(scores), std::move(backend_id), coverage);
}

BoundsReport verify_bounds(std::uint64_t samples, std::uint64_t seed) {
  BoundsReport report;
  report.samples = samples;
  report.seed = seed;
  report.min_score = 1.0;
  report.max_score = 0.0;

  auto fail = [&](std::string what) { report.violations.push_back(std::move(what)); };
  auto describe = [](double x, double y, double z) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << x << ", " << y << ", " << z << ")";
    return os.str();
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::uint64_t i = 0; i < samples; ++i) {
    // sorted uniform cut points give a uniform point on the simplex
    double a = unit(rng);
    double b = unit(rng);
    if (a > b) std::swap(a, b);
    const double x = a;
    const double y = b - a;
    const double z = 1.0 - b;
    const double w0 = std::sqrt(x * y + z);
    report.min_score = std::min(report.min_score, w0);
    report.max_score = std::max(report.max_score, w0);
    if (!(w0 >= 0.0 && w0 <= 1.0)) fail("bound violated at " + describe(x, y, z));
    if (std::sqrt(y * x + z) != w0) fail("symmetry violated at " + describe(x, y, z));

    // for fixed p_n the balanced split is optimal
    const double balanced = std::sqrt(((1.0 - z) / 2.0) * ((1.0 - z) / 2.0) + z);
    if (w0 > balanced + 1e-12) fail("fixed-p_n optimum exceeded at " + describe(x, y, z));
  }

  const std::array<std::array<double, 4>, 3> vertices{{
      {1.0, 0.0, 0.0, 0.0},
      {0.0, 1.0, 0.0, 0.0},
      {0.0, 0.0, 1.0, 1.0},
  }};
  for (const auto& v : vertices) {
    const double got = subset_score(v[0], v[1], v[2]);
    if (got != v[3]) fail("vertex " + describe(v[0], v[1], v[2]) + " scored " + std::to_string(got));
  }

  // z = 0 edge: W = x(1-x) peaks at 1/4, so P_s peaks at 1/2 at x = 1/2
  constexpr int kEdgeSteps = 10000;
  report.edge_max_score = -1.0;
  for (int k = 0; k <= kEdgeSteps; ++k) {
    const double x = static_cast<double>(k) / kEdgeSteps;
    const double s = std::sqrt(x * (1.0 - x));
    if (s > report.edge_max_score) {
      report.edge_max_score = s;
      report.edge_argmax_p_w = x;
    }
  }
  if (std::abs(report.edge_max_score - 0.5) > 1e-9 || std::abs(report.edge_argmax_p_w - 0.5) > 1e-9) {
    fail("z=0 edge maximum " + std::to_string(report.edge_max_score) + " at p_w=" +
         std::to_string(report.edge_argmax_p_w));
  }
  if (subset_score(0.5, 0.5, 0.0) != 0.5) fail("P_s(0.5, 0.5, 0) != 0.5");
  return report;
}

}  // namespace tgbi
