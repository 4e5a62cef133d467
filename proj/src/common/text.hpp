#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace quadpois::text {

std::string_view trim(std::string_view s);
// Drops everything after '#'.
std::string_view strip_comment(std::string_view s);
std::vector<std::string> split_ws(std::string_view s);
std::vector<std::string_view> lines(std::string_view s);
bool starts_with_word(std::string_view line, std::string_view word);
std::size_t indentation(std::string_view line);
std::string read_file(const std::string& path);

}  // namespace quadpois::text
