#include "tgbi/hangul.hpp"

#include <string>

#include "tgbi/error.hpp"
#include "tgbi/utf8.hpp"

namespace tgbi::hangul {

bool batchim_final(char32_t syllable) {
  if (!is_syllable(syllable)) {
    throw Error(ErrorCode::NotHangulSyllable,
                "U+" + std::to_string(static_cast<unsigned long>(syllable)) +
                    " is not a precomposed Hangul syllable");
  }
  return (syllable - kFirstSyllable) % 28 != 0;
}

char32_t last_codepoint(std::string_view text) {
  auto decoded = utf8::decode(text);
  if (!decoded || decoded->empty()) {
    throw Error(ErrorCode::NotHangulSyllable, "empty or malformed text");
  }
  return decoded->back();
}

}  // namespace tgbi::hangul
