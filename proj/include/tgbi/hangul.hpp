#pragma once

#include <string_view>

namespace tgbi::hangul {

inline constexpr char32_t kFirstSyllable = 0xAC00;
inline constexpr char32_t kLastSyllable = 0xD7A3;

constexpr bool is_syllable(char32_t c) { return c >= kFirstSyllable && c <= kLastSyllable; }

/// True iff the precomposed syllable carries a final consonant (batchim).
/// Throws Error(NotHangulSyllable) for any codepoint outside U+AC00..U+D7A3.
bool batchim_final(char32_t syllable);

/// Last codepoint of a UTF-8 string. Throws Error(NotHangulSyllable) when the
/// string is empty or malformed.
char32_t last_codepoint(std::string_view text);

}  // namespace tgbi::hangul
