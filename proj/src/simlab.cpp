#include "tgbi/simlab.hpp"

#include <cmath>

#include <json.hpp>

#include "tgbi/error.hpp"
#include "tgbi/utf8.hpp"

namespace tgbi::simlab {

namespace {

constexpr std::string_view kScopes[] = {"all", "negative", "positive", "occupation"};

std::uint64_t fnv1a(std::uint64_t seed, std::string_view key) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (int i = 0; i < 8; ++i) {
    h ^= (seed >> (8 * i)) & 0xFF;
    h *= 0x100000001b3ULL;
  }
  for (unsigned char c : key) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

TargetPortions parse_target(const nlohmann::json& j) {
  TargetPortions t;
  if (j.is_array() && j.size() == 3) {
    t = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
  } else if (j.is_object()) {
    t = {j.at("p_w").get<double>(), j.at("p_m").get<double>(), j.at("p_n").get<double>()};
  } else {
    throw Error(ErrorCode::ConfigError, "target must be [p_w, p_m, p_n] or {p_w, p_m, p_n}");
  }
  return t;
}

}  // namespace

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::FixedPortions: return "FixedPortions";
    case PolicyKind::PerLexiconDeterministic: return "PerLexiconDeterministic";
    case PolicyKind::PerSubsetPortions: return "PerSubsetPortions";
  }
  return "?";
}

std::optional<PolicyKind> parse_policy_kind(std::string_view text) {
  for (auto k : {PolicyKind::FixedPortions, PolicyKind::PerLexiconDeterministic,
                 PolicyKind::PerSubsetPortions}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

void SyntheticPolicy::validate() const {
  for (const auto& [scope, t] : targets) {
    bool known = false;
    for (auto s : kScopes) known = known || s == scope;
    if (!known) throw Error(ErrorCode::ConfigError, "unknown policy scope '" + scope + "'");
    PortionTriple::from_values(t.p_w, t.p_m, t.p_n);
  }
  if (kind == PolicyKind::FixedPortions && (targets.size() != 1 || !targets.contains("all"))) {
    throw Error(ErrorCode::ConfigError, "FixedPortions takes exactly one target, scope 'all'");
  }
  if (!targets.contains("all")) {
    for (auto c : {ContentClass::Negative, ContentClass::Positive, ContentClass::Occupation}) {
      if (!targets.contains(std::string(tgbi::to_string(c)))) {
        throw Error(ErrorCode::ConfigError,
                    "no target covers content class '" + std::string(tgbi::to_string(c)) + "'");
      }
    }
  }
}

const TargetPortions& SyntheticPolicy::target_for(ContentClass content) const {
  if (kind != PolicyKind::FixedPortions) {
    if (auto it = targets.find(std::string(tgbi::to_string(content))); it != targets.end()) {
      return it->second;
    }
  }
  auto it = targets.find("all");
  if (it == targets.end()) throw Error(ErrorCode::ConfigError, "policy has no applicable target");
  return it->second;
}

SyntheticPolicy all_neutral_policy() {
  return {PolicyKind::FixedPortions, {{"all", {0.0, 0.0, 1.0}}}, 0};
}

SyntheticPolicy contrast_policy(std::uint64_t seed) {
  return {PolicyKind::PerLexiconDeterministic,
          {{"positive", {1.0, 0.0, 0.0}},
           {"negative", {0.0, 1.0, 0.0}},
           {"occupation", {0.5, 0.5, 0.0}}},
          seed};
}

SyntheticPolicy policy_from_json(std::string_view json_text) {
  SyntheticPolicy policy;
  try {
    auto obj = nlohmann::json::parse(json_text);
    const auto kind_text = obj.at("kind").get<std::string>();
    auto kind = parse_policy_kind(kind_text);
    if (!kind) throw Error(ErrorCode::ConfigError, "unknown policy kind '" + kind_text + "'");
    policy.kind = *kind;
    policy.seed = obj.value("seed", std::uint64_t{0});
    for (const auto& [scope, target] : obj.at("targets").items()) {
      policy.targets[scope] = parse_target(target);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("policy JSON: ") + e.what());
  }
  policy.validate();
  return policy;
}

SyntheticPolicy load_policy(const std::filesystem::path& path) {
  return policy_from_json(utf8::read_file(path));
}

std::string policy_to_json(const SyntheticPolicy& policy) {
  nlohmann::ordered_json targets = nlohmann::ordered_json::object();
  for (const auto& [scope, t] : policy.targets) {
    targets[scope] = {{"p_w", t.p_w}, {"p_m", t.p_m}, {"p_n", t.p_n}};
  }
  nlohmann::ordered_json obj{
      {"kind", to_string(policy.kind)}, {"seed", policy.seed}, {"targets", targets}};
  return obj.dump(2) + '\n';
}

double unit_hash(std::uint64_t seed, std::string_view key) {
  const auto bits = splitmix64(fnv1a(seed, key)) >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

Gender synth_gender(const EecSentence& sentence, const SyntheticPolicy& policy) {
  const auto& target = policy.target_for(sentence.content_class);
  const std::string_view key =
      policy.kind == PolicyKind::PerLexiconDeterministic ? sentence.entry_ref : sentence.sentence_id;
  const double u = unit_hash(policy.seed, key);
  if (u < target.p_w) return Gender::Female;
  if (u < target.p_w + target.p_m) return Gender::Male;
  return Gender::Neutral;
}

std::string gloss_for(std::string_view entry_ref) {
  std::string out;
  for (char c : entry_ref) {
    if (c != '-') out.push_back(c);
  }
  return out;
}

std::string render_output(Gender gender, std::string_view gloss) {
  std::string_view subject = gender == Gender::Female ? "She"
                             : gender == Gender::Male ? "He"
                                                      : "The person";
  return std::string(subject) + " is " + std::string(gloss) + ".";
}

std::string synth_translate(const EecSentence& sentence, const SyntheticPolicy& policy) {
  return render_output(synth_gender(sentence, policy), gloss_for(sentence.entry_ref));
}

SyntheticTranslator::SyntheticTranslator(SyntheticPolicy policy) : policy_(std::move(policy)) {
  policy_.validate();
}

std::string SyntheticTranslator::translate(const EecSentence& sentence, const std::string&) {
  return synth_translate(sentence, policy_);
}

EvaluationReport run_subset_demo(const EecCorpus& corpus, const SyntheticPolicy& policy,
                                 const GenderWordlists& lists, std::string backend_id) {
  policy.validate();
  std::vector<std::optional<Gender>> labels;
  labels.reserve(corpus.size());
  for (const auto& sentence : corpus.sentences()) {
    labels.push_back(classify(synth_translate(sentence, policy), lists).value);
  }
  return evaluate_labels(corpus, labels, std::move(backend_id));
}

}  // namespace tgbi::simlab
