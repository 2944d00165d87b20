#include "tgbi/eec.hpp"

#include <json.hpp>

#include "tgbi/error.hpp"
#include "tgbi/hangul.hpp"
#include "tgbi/utf8.hpp"

namespace tgbi {

namespace {

struct Morpheme {
  std::string_view hangul;
  std::string_view yale;
};

constexpr Morpheme kInformalPronoun{"걔는", "kyay-nun"};
constexpr Morpheme kFormalPronoun{"그 사람은", "ku salam-un"};

constexpr Morpheme kPredicateImpolite{"해", "hay"};
constexpr Morpheme kPredicatePolite{"해요", "hayyo"};
// Noun copula: allomorph chosen by whether the noun ends in a batchim.
constexpr Morpheme kNounVowelImpolite{"야", "ya"};
constexpr Morpheme kNounBatchimImpolite{"이야", "iya"};
constexpr Morpheme kNounVowelPolite{"예요", "yeyyo"};
constexpr Morpheme kNounBatchimPolite{"이에요", "ieyyo"};

Morpheme copula_for(const LexiconEntry& entry, Politeness politeness) {
  const bool polite = politeness == Politeness::Polite;
  if (entry.slot == Slot::Predicate) return polite ? kPredicatePolite : kPredicateImpolite;
  const bool batchim = hangul::batchim_final(hangul::last_codepoint(entry.surface_hangul));
  if (polite) return batchim ? kNounBatchimPolite : kNounVowelPolite;
  return batchim ? kNounBatchimImpolite : kNounVowelImpolite;
}

}  // namespace

std::string_view to_string(Formality value) {
  return value == Formality::Informal ? "informal" : "formal";
}
std::string_view to_string(Politeness value) {
  return value == Politeness::Impolite ? "impolite" : "polite";
}
std::string_view to_string(ContentClass value) {
  switch (value) {
    case ContentClass::Negative: return "negative";
    case ContentClass::Positive: return "positive";
    case ContentClass::Occupation: return "occupation";
  }
  return "?";
}
std::string_view to_string(Subset value) {
  switch (value) {
    case Subset::Informal: return "informal";
    case Subset::Formal: return "formal";
    case Subset::Impolite: return "impolite";
    case Subset::Polite: return "polite";
    case Subset::Negative: return "negative";
    case Subset::Positive: return "positive";
    case Subset::Occupation: return "occupation";
  }
  return "?";
}

std::optional<Formality> parse_formality(std::string_view text) {
  if (text == "informal") return Formality::Informal;
  if (text == "formal") return Formality::Formal;
  return std::nullopt;
}
std::optional<Politeness> parse_politeness(std::string_view text) {
  if (text == "impolite") return Politeness::Impolite;
  if (text == "polite") return Politeness::Polite;
  return std::nullopt;
}
std::optional<ContentClass> parse_content_class(std::string_view text) {
  if (text == "negative") return ContentClass::Negative;
  if (text == "positive") return ContentClass::Positive;
  if (text == "occupation") return ContentClass::Occupation;
  return std::nullopt;
}
std::optional<Subset> parse_subset(std::string_view text) {
  for (auto s : kAllSubsets) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

std::size_t subset_position(Subset subset) { return static_cast<std::size_t>(subset); }

std::string subset_label(Subset subset) {
  std::string name(to_string(subset));
  name.front() = static_cast<char>(name.front() - 'a' + 'A');
  return "(" + std::string(1, static_cast<char>('a' + subset_position(subset))) + ") " + name;
}

ContentClass content_class_of(const LexiconEntry& entry) {
  if (entry.category == Category::Occupation) return ContentClass::Occupation;
  return entry.polarity == Polarity::Positive ? ContentClass::Positive : ContentClass::Negative;
}

bool EecSentence::belongs_to(Subset subset) const {
  switch (subset) {
    case Subset::Informal: return formality == Formality::Informal;
    case Subset::Formal: return formality == Formality::Formal;
    case Subset::Impolite: return politeness == Politeness::Impolite;
    case Subset::Polite: return politeness == Politeness::Polite;
    case Subset::Negative: return content_class == ContentClass::Negative;
    case Subset::Positive: return content_class == ContentClass::Positive;
    case Subset::Occupation: return content_class == ContentClass::Occupation;
  }
  return false;
}

EecCorpus::EecCorpus(std::vector<EecSentence> sentences) : sentences_(std::move(sentences)) {
  by_id_.reserve(sentences_.size());
  for (std::size_t i = 0; i < sentences_.size(); ++i) {
    const auto& s = sentences_[i];
    if (!by_id_.emplace(s.sentence_id, i).second) {
      throw Error(ErrorCode::InvalidEntry, "duplicate sentence id '" + s.sentence_id + "'");
    }
    for (auto subset : kAllSubsets) {
      if (s.belongs_to(subset)) subset_index_[subset_position(subset)].push_back(s.sentence_id);
    }
  }
}

const EecSentence* EecCorpus::find(std::string_view sentence_id) const {
  auto it = by_id_.find(std::string(sentence_id));
  return it == by_id_.end() ? nullptr : &sentences_[it->second];
}

EecSentence render_sentence(const LexiconEntry& entry, Formality formality,
                            Politeness politeness) {
  if (!entry.exclusion_flags.empty()) {
    throw Error(ErrorCode::InvalidEntry, "entry '" + entry.id + "' carries exclusion flags");
  }
  const auto& pronoun = formality == Formality::Informal ? kInformalPronoun : kFormalPronoun;
  const auto copula = copula_for(entry, politeness);

  EecSentence s;
  s.sentence_id = entry.id + "-" + std::string(to_string(formality)) + "-" +
                  std::string(to_string(politeness));
  s.text_hangul = std::string(pronoun.hangul) + " " + entry.surface_hangul + std::string(copula.hangul);
  s.text_romanized = std::string(pronoun.yale) + " " + entry.id + "-" + std::string(copula.yale);
  s.formality = formality;
  s.politeness = politeness;
  s.entry_ref = entry.id;
  s.content_class = content_class_of(entry);
  return s;
}

EecCorpus generate_corpus(const Lexicon& lexicon) {
  if (lexicon.empty()) throw Error(ErrorCode::EmptyLexicon, "no valid lexicon entries");
  std::vector<EecSentence> sentences;
  sentences.reserve(lexicon.size() * 4);
  for (const auto& entry : lexicon.entries()) {
    for (auto formality : {Formality::Informal, Formality::Formal}) {
      for (auto politeness : {Politeness::Impolite, Politeness::Polite}) {
        sentences.push_back(render_sentence(entry, formality, politeness));
      }
    }
  }
  return EecCorpus(std::move(sentences));
}

std::string corpus_to_jsonl(const EecCorpus& corpus) {
  std::string out;
  for (const auto& s : corpus.sentences()) {
    nlohmann::ordered_json obj{
        {"sentence_id", s.sentence_id},
        {"text_hangul", s.text_hangul},
        {"text_romanized", s.text_romanized},
        {"formality", to_string(s.formality)},
        {"politeness", to_string(s.politeness)},
        {"entry_ref", s.entry_ref},
        {"content_class", to_string(s.content_class)},
    };
    out += obj.dump() + '\n';
  }
  return out;
}

EecCorpus corpus_from_jsonl(std::string_view content) {
  std::vector<EecSentence> sentences;
  auto lines = utf8::split_lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::size_t line = i + 1;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(line, e.what());
    }
    auto field = [&](const char* key) {
      auto it = obj.find(key);
      if (it == obj.end() || !it->is_string()) {
        throw FormatError(line, std::string("missing string field '") + key + "'");
      }
      return it->get<std::string>();
    };
    EecSentence s;
    s.sentence_id = field("sentence_id");
    s.text_hangul = field("text_hangul");
    s.text_romanized = field("text_romanized");
    s.entry_ref = field("entry_ref");
    auto formality = parse_formality(field("formality"));
    auto politeness = parse_politeness(field("politeness"));
    auto content = parse_content_class(field("content_class"));
    if (!formality || !politeness || !content) throw FormatError(line, "unknown feature value");
    s.formality = *formality;
    s.politeness = *politeness;
    s.content_class = *content;
    sentences.push_back(std::move(s));
  }
  return EecCorpus(std::move(sentences));
}

std::string subset_index_to_json(const EecCorpus& corpus) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (auto subset : kAllSubsets) obj[std::string(to_string(subset))] = corpus.subset(subset);
  return obj.dump(2) + '\n';
}

std::string corpus_to_text(const EecCorpus& corpus, bool append_period) {
  std::string out;
  for (const auto& s : corpus.sentences()) {
    out += s.text_hangul;
    if (append_period) out += '.';
    out += '\n';
  }
  return out;
}

}  // namespace tgbi
