#include "tgbi/lexicon.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include <json.hpp>

#include "tgbi/error.hpp"
#include "tgbi/hangul.hpp"
#include "tgbi/utf8.hpp"

namespace tgbi {

namespace {

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::pair<std::string_view, Enum>, N>& table,
                           std::string_view text) {
  for (const auto& [name, value] : table) {
    if (name == text) return value;
  }
  return std::nullopt;
}

constexpr std::array<std::pair<std::string_view, Category>, 2> kCategories{{
    {"Sentiment", Category::Sentiment},
    {"Occupation", Category::Occupation},
}};
constexpr std::array<std::pair<std::string_view, Polarity>, 3> kPolarities{{
    {"Positive", Polarity::Positive},
    {"Negative", Polarity::Negative},
    {"Neutral", Polarity::Neutral},
}};
constexpr std::array<std::pair<std::string_view, Slot>, 2> kSlots{{
    {"Predicate", Slot::Predicate},
    {"NounPhrase", Slot::NounPhrase},
}};
constexpr std::array<std::pair<std::string_view, ExclusionFlag>, 8> kFlags{{
    {"Appearance", ExclusionFlag::Appearance},
    {"Richness", ExclusionFlag::Richness},
    {"SexualOrientation", ExclusionFlag::SexualOrientation},
    {"Disability", ExclusionFlag::Disability},
    {"AcademicBackground", ExclusionFlag::AcademicBackground},
    {"OccupationOrStatus", ExclusionFlag::OccupationOrStatus},
    {"GenderSpecific", ExclusionFlag::GenderSpecific},
    {"HateTerm", ExclusionFlag::HateTerm},
}};

template <typename Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<std::string_view, Enum>, N>& table,
                         Enum value) {
  for (const auto& [name, v] : table) {
    if (v == value) return name;
  }
  return "?";
}

bool is_slug(std::string_view id) {
  if (id.empty() || id.front() == '-' || id.back() == '-') return false;
  char prev = 0;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
    if (!ok || (c == '-' && prev == '-')) return false;
    prev = c;
  }
  return true;
}

bool has_hangul_syllable(std::string_view text) {
  auto decoded = utf8::decode(text);
  if (!decoded) return false;
  return std::any_of(decoded->begin(), decoded->end(),
                     [](char32_t c) { return c >= 0xAC00 && c <= 0xD7A3; });
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto end = text.find(sep, start);
    parts.push_back(text.substr(start, end == std::string_view::npos ? end : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

template <typename Enum>
Enum require(std::optional<Enum> value, std::size_t line, std::string_view field,
             std::string_view text) {
  if (!value) {
    throw FormatError(line, "unknown " + std::string(field) + " '" + std::string(text) + "'");
  }
  return *value;
}

LexiconEntry parse_tsv_row(std::string_view row, std::size_t line) {
  auto cols = split(row, '\t');
  if (cols.size() != 6) {
    throw FormatError(line, "expected 6 tab-separated columns, found " +
                                std::to_string(cols.size()));
  }
  LexiconEntry entry;
  entry.id = std::string(cols[0]);
  entry.surface_hangul = std::string(cols[1]);
  entry.category = require(parse_category(cols[2]), line, "category", cols[2]);
  entry.polarity = require(parse_polarity(cols[3]), line, "polarity", cols[3]);
  entry.slot = require(parse_slot(cols[4]), line, "slot", cols[4]);
  if (!cols[5].empty()) {
    for (auto flag : split(cols[5], ';')) {
      if (flag.empty()) continue;
      entry.exclusion_flags.insert(require(parse_exclusion_flag(flag), line, "exclusion flag", flag));
    }
  }
  return entry;
}

LexiconEntry parse_jsonl_row(std::string_view row, std::size_t line) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(row);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(line, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw FormatError(line, "expected a JSON object");
  auto text_field = [&](const char* key) -> std::string {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
      throw FormatError(line, std::string("missing string field '") + key + "'");
    }
    return it->get<std::string>();
  };
  LexiconEntry entry;
  entry.id = text_field("id");
  entry.surface_hangul = text_field("surface_hangul");
  auto category = text_field("category");
  auto polarity = text_field("polarity");
  auto slot = text_field("slot");
  entry.category = require(parse_category(category), line, "category", category);
  entry.polarity = require(parse_polarity(polarity), line, "polarity", polarity);
  entry.slot = require(parse_slot(slot), line, "slot", slot);
  if (auto it = obj.find("exclusion_flags"); it != obj.end()) {
    if (!it->is_array()) throw FormatError(line, "exclusion_flags must be an array");
    for (const auto& flag : *it) {
      if (!flag.is_string()) throw FormatError(line, "exclusion flag must be a string");
      auto text = flag.get<std::string>();
      entry.exclusion_flags.insert(require(parse_exclusion_flag(text), line, "exclusion flag", text));
    }
  }
  return entry;
}

}  // namespace

std::string_view to_string(Category value) { return name_of(kCategories, value); }
std::string_view to_string(Polarity value) { return name_of(kPolarities, value); }
std::string_view to_string(Slot value) { return name_of(kSlots, value); }
std::string_view to_string(ExclusionFlag value) { return name_of(kFlags, value); }

std::optional<Category> parse_category(std::string_view text) { return lookup(kCategories, text); }
std::optional<Polarity> parse_polarity(std::string_view text) { return lookup(kPolarities, text); }
std::optional<Slot> parse_slot(std::string_view text) { return lookup(kSlots, text); }
std::optional<ExclusionFlag> parse_exclusion_flag(std::string_view text) {
  return lookup(kFlags, text);
}

std::optional<LexiconFormat> parse_lexicon_format(std::string_view text) {
  if (text == "tsv" || text == "Tsv") return LexiconFormat::Tsv;
  if (text == "jsonl" || text == "Jsonl") return LexiconFormat::Jsonl;
  return std::nullopt;
}

std::string Violation::to_string() const {
  std::string name;
  switch (code) {
    case ViolationCode::InvalidId: name = "InvalidId"; break;
    case ViolationCode::EmptySurface: name = "EmptySurface"; break;
    case ViolationCode::NoHangulSyllable: name = "NoHangulSyllable"; break;
    case ViolationCode::NounPhraseMustEndInSyllable: name = "NounPhraseMustEndInSyllable"; break;
    case ViolationCode::OccupationMustBeNeutral: name = "OccupationMustBeNeutral"; break;
    case ViolationCode::OccupationMustBeNounPhrase: name = "OccupationMustBeNounPhrase"; break;
    case ViolationCode::SentimentMustBePolar: name = "SentimentMustBePolar"; break;
    case ViolationCode::ExcludedCategory: name = "ExcludedCategory"; break;
    case ViolationCode::DuplicateId: name = "DuplicateId"; break;
    case ViolationCode::DuplicateSurface: name = "DuplicateSurface"; break;
  }
  if (flag) name += "(" + std::string(tgbi::to_string(*flag)) + ")";
  return name;
}

std::vector<Violation> validate_entry(const LexiconEntry& entry) {
  std::vector<Violation> out;
  if (!is_slug(entry.id)) out.push_back({ViolationCode::InvalidId, std::nullopt});
  if (entry.surface_hangul.empty()) {
    out.push_back({ViolationCode::EmptySurface, std::nullopt});
  } else if (!has_hangul_syllable(entry.surface_hangul)) {
    out.push_back({ViolationCode::NoHangulSyllable, std::nullopt});
  } else if (entry.slot == Slot::NounPhrase) {
    // copula allomorph selection needs a final syllable to inspect
    auto decoded = utf8::decode(entry.surface_hangul);
    if (!hangul::is_syllable(decoded->back())) {
      out.push_back({ViolationCode::NounPhraseMustEndInSyllable, std::nullopt});
    }
  }
  if (entry.category == Category::Occupation) {
    if (entry.polarity != Polarity::Neutral) {
      out.push_back({ViolationCode::OccupationMustBeNeutral, std::nullopt});
    }
    if (entry.slot != Slot::NounPhrase) {
      out.push_back({ViolationCode::OccupationMustBeNounPhrase, std::nullopt});
    }
  } else if (entry.polarity == Polarity::Neutral) {
    out.push_back({ViolationCode::SentimentMustBePolar, std::nullopt});
  }
  for (auto flag : entry.exclusion_flags) {
    out.push_back({ViolationCode::ExcludedCategory, flag});
  }
  return out;
}

Lexicon::Lexicon(std::string source_name, std::vector<LexiconEntry> entries)
    : source_name_(std::move(source_name)), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const LexiconEntry& a, const LexiconEntry& b) { return a.id < b.id; });
  std::set<std::pair<Category, std::string>> surfaces;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (auto v = validate_entry(e); !v.empty()) {
      throw Error(ErrorCode::InvalidEntry, "entry '" + e.id + "': " + v.front().to_string());
    }
    if (i > 0 && entries_[i - 1].id == e.id) {
      throw Error(ErrorCode::InvalidEntry, "duplicate id '" + e.id + "'");
    }
    if (!surfaces.emplace(e.category, e.surface_hangul).second) {
      throw Error(ErrorCode::InvalidEntry, "duplicate surface '" + e.surface_hangul + "'");
    }
    ++counts_[e.polarity];
  }
}

std::size_t Lexicon::count(Polarity polarity) const {
  auto it = counts_.find(polarity);
  return it == counts_.end() ? 0 : it->second;
}

const LexiconEntry* Lexicon::find(std::string_view id) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                             [](const LexiconEntry& e, std::string_view key) { return e.id < key; });
  return it != entries_.end() && it->id == id ? &*it : nullptr;
}

LexiconLoadResult parse_lexicon(std::string_view content, LexiconFormat format,
                                std::string source_name) {
  if (!utf8::is_valid(content)) {
    throw Error(ErrorCode::FormatError, source_name + " is not valid UTF-8");
  }
  auto lines = utf8::split_lines(content);
  std::size_t first = 0;
  if (format == LexiconFormat::Tsv) {
    if (lines.empty() || lines.front() != kLexiconTsvHeader) {
      throw FormatError(1, "missing or unexpected TSV header");
    }
    first = 1;
  }

  struct Accepted {
    LexiconEntry entry;
    std::size_t line;
  };
  std::vector<Accepted> accepted;
  LexiconLoadResult result;
  std::set<std::string> seen_ids;
  std::map<std::pair<Category, std::string>, std::string> surface_owner;
  std::map<std::string, std::pair<Category, std::string>> any_surface;

  for (std::size_t i = first; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto row = lines[i];
    if (row.empty()) continue;
    auto entry = format == LexiconFormat::Tsv ? parse_tsv_row(row, line_no)
                                              : parse_jsonl_row(row, line_no);
    ++result.parsed_rows;

    auto violations = validate_entry(entry);
    if (!seen_ids.insert(entry.id).second) {
      violations.push_back({ViolationCode::DuplicateId, std::nullopt});
    }
    const auto key = std::make_pair(entry.category, entry.surface_hangul);
    if (violations.empty() && surface_owner.contains(key)) {
      violations.push_back({ViolationCode::DuplicateSurface, std::nullopt});
    }
    if (!violations.empty()) {
      result.rejections.push_back({line_no, entry.id, std::move(violations)});
      continue;
    }
    surface_owner.emplace(key, entry.id);
    if (auto it = any_surface.find(entry.surface_hangul);
        it != any_surface.end() && it->second.first != entry.category) {
      result.warnings.push_back({line_no, entry.id, "SurfaceSharedAcrossCategories"});
    } else {
      any_surface.emplace(entry.surface_hangul, std::make_pair(entry.category, entry.id));
    }
    accepted.push_back({std::move(entry), line_no});
  }

  std::vector<LexiconEntry> entries;
  entries.reserve(accepted.size());
  for (auto& a : accepted) entries.push_back(std::move(a.entry));
  result.lexicon = Lexicon(std::move(source_name), std::move(entries));
  return result;
}

LexiconLoadResult load_lexicon(const std::filesystem::path& path, LexiconFormat format) {
  return parse_lexicon(utf8::read_file(path), format, path.filename().string());
}

std::string write_lexicon_tsv(const std::vector<LexiconEntry>& entries) {
  std::string out(kLexiconTsvHeader);
  out += '\n';
  for (const auto& e : entries) {
    out += e.id + '\t' + e.surface_hangul + '\t';
    out += std::string(to_string(e.category)) + '\t' + std::string(to_string(e.polarity)) + '\t' +
           std::string(to_string(e.slot)) + '\t';
    bool first = true;
    for (auto flag : e.exclusion_flags) {
      if (!first) out += ';';
      out += to_string(flag);
      first = false;
    }
    out += '\n';
  }
  return out;
}

std::string rejections_to_jsonl(const std::vector<Rejection>& rejections,
                                const std::vector<LexiconWarning>& warnings) {
  std::string out;
  for (const auto& r : rejections) {
    nlohmann::json obj{{"line", r.line}};
    if (!r.id.empty()) obj["id"] = r.id;
    auto list = nlohmann::json::array();
    for (const auto& v : r.violations) list.push_back(v.to_string());
    obj["violations"] = std::move(list);
    obj["warnings"] = nlohmann::json::array();
    out += obj.dump() + '\n';
  }
  for (const auto& w : warnings) {
    nlohmann::json obj{{"line", w.line}};
    if (!w.id.empty()) obj["id"] = w.id;
    obj["violations"] = nlohmann::json::array();
    obj["warnings"] = nlohmann::json::array({w.code});
    out += obj.dump() + '\n';
  }
  return out;
}

}  // namespace tgbi
