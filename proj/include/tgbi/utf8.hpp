#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tgbi::utf8 {

/// Decodes strict UTF-8 (no overlongs, no surrogates). nullopt on any defect.
std::optional<std::u32string> decode(std::string_view bytes);

bool is_valid(std::string_view bytes);

std::string encode(char32_t codepoint);

/// Splits on '\n', dropping one trailing '\r' per line so CRLF input reads
/// the same as LF. A final empty line after a trailing newline is not returned.
std::vector<std::string_view> split_lines(std::string_view text);

/// Reads a whole file; throws Error(FileUnreadable) on failure.
std::string read_file(const std::filesystem::path& path);

/// Writes a whole file, creating parent directories; throws on failure.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace tgbi::utf8
