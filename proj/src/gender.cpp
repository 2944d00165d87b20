#include "tgbi/gender.hpp"

#include <algorithm>

#include <json.hpp>

#include "tgbi/error.hpp"
#include "tgbi/utf8.hpp"

namespace tgbi {

namespace {

bool is_letter(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool is_clean(const std::string& word) {
  if (word.empty() || word.front() == ' ' || word.back() == ' ') return false;
  return std::none_of(word.begin(), word.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || c == '\t' || c == '\n' || c == '\r';
  });
}

std::vector<std::string> split_words(const std::string& phrase) {
  std::vector<std::string> words;
  for (const auto& t : tokenize(phrase)) words.push_back(t.text);
  return words;
}

}  // namespace

std::string_view to_string(Gender value) {
  switch (value) {
    case Gender::Female: return "F";
    case Gender::Male: return "M";
    case Gender::Neutral: return "N";
  }
  return "?";
}

std::string_view long_name(Gender value) {
  switch (value) {
    case Gender::Female: return "Female";
    case Gender::Male: return "Male";
    case Gender::Neutral: return "Neutral";
  }
  return "?";
}

GenderWordlists GenderWordlists::swapped() const { return {male, female, neutral_markers}; }

void GenderWordlists::validate() const {
  for (const auto* list : {&female, &male, &neutral_markers}) {
    for (const auto& word : *list) {
      if (!is_clean(word)) throw Error(ErrorCode::ConfigError, "wordlist entry '" + word + "' is not lowercase/trimmed");
    }
  }
  for (const auto& word : female) {
    if (male.contains(word)) throw Error(ErrorCode::ConfigError, "'" + word + "' is listed as both female and male");
  }
}

GenderWordlists default_wordlists() {
  return {
      {"she", "her", "hers", "herself", "woman", "women", "girl", "girls"},
      {"he", "him", "his", "himself", "man", "men", "guy", "guys", "boy", "boys"},
      {"the person", "that person", "they"},
  };
}

GenderWordlists paper_exact_wordlists() {
  return {
      {"she", "her", "woman", "girl"},
      {"he", "him", "man", "guy", "boy"},
      {"the person"},
  };
}

GenderWordlists wordlists_from_json(std::string_view json_text) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("wordlist JSON: ") + e.what());
  }
  if (!obj.is_object()) throw Error(ErrorCode::ConfigError, "wordlist JSON must be an object");
  GenderWordlists lists;
  auto read = [&](const char* key, std::set<std::string>& into) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_array()) throw Error(ErrorCode::ConfigError, std::string(key) + " must be an array");
    for (const auto& w : *it) {
      if (!w.is_string()) throw Error(ErrorCode::ConfigError, std::string(key) + " entries must be strings");
      into.insert(w.get<std::string>());
    }
  };
  read("female", lists.female);
  read("male", lists.male);
  read("neutral_markers", lists.neutral_markers);
  lists.validate();
  return lists;
}

GenderWordlists load_wordlists(const std::filesystem::path& path) {
  return wordlists_from_json(utf8::read_file(path));
}

std::string wordlists_to_json(const GenderWordlists& lists) {
  nlohmann::ordered_json obj{
      {"female", lists.female}, {"male", lists.male}, {"neutral_markers", lists.neutral_markers}};
  return obj.dump(2) + '\n';
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_letter(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    Token tok{{}, i};
    while (i < text.size() && is_letter(static_cast<unsigned char>(text[i]))) {
      tok.text.push_back(lower(text[i]));
      ++i;
    }
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

GenderLabel classify(std::string_view output_text, const GenderWordlists& lists) {
  if (std::all_of(output_text.begin(), output_text.end(),
                  [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; })) {
    throw Error(ErrorCode::EmptyInput, "translation output is empty");
  }
  const auto tokens = tokenize(output_text);

  std::vector<std::pair<std::string, std::vector<std::string>>> markers;
  for (const auto& m : lists.neutral_markers) markers.emplace_back(m, split_words(m));

  GenderLabel label;
  std::size_t female = 0;
  std::size_t male = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& tok = tokens[i];
    if (lists.female.contains(tok.text)) {
      label.evidence.push_back({tok.text, tok.offset, EvidenceKind::Female});
      ++female;
    } else if (lists.male.contains(tok.text)) {
      label.evidence.push_back({tok.text, tok.offset, EvidenceKind::Male});
      ++male;
    }
    for (const auto& [phrase, words] : markers) {
      if (words.empty() || i + words.size() > tokens.size()) continue;
      bool match = true;
      for (std::size_t k = 0; k < words.size() && match; ++k) match = tokens[i + k].text == words[k];
      if (match) label.evidence.push_back({phrase, tok.offset, EvidenceKind::NeutralMarker});
    }
  }
  if (female > 0 && male == 0) {
    label.value = Gender::Female;
  } else if (male > 0 && female == 0) {
    label.value = Gender::Male;
  } else {
    label.value = Gender::Neutral;
  }
  return label;
}

}  // namespace tgbi
