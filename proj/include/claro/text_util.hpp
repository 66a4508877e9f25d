#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace claro::text {

std::string lower(std::string_view s);
std::string trim(std::string_view s);
/// Collapses runs of whitespace into single spaces and trims.
std::string collapse_ws(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool istarts_with(std::string_view s, std::string_view prefix);
bool icontains(std::string_view s, std::string_view needle);
std::string capitalize_first(std::string s);
std::vector<std::string> split(std::string_view s, char sep);
/// Whitespace-collapsed with no space before ? , . ; : !
std::string normalize_spacing(std::string_view s);

}  // namespace claro::text
