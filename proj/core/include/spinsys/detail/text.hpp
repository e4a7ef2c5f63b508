#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace spinsys::text {

// Drops whitespace and maps the unicode minus sign and radical sign to ASCII
// ("−" -> "-", "√" -> "sqrt").
std::string normalize(std::string_view raw);

// Removes one pair of enclosing parentheses when they match each other.
std::string strip_parentheses(const std::string& text);

// Optional sign followed by decimal digits.
boost::multiprecision::cpp_int parse_bigint(std::string_view text);

// Splits on a separator that is not nested inside parentheses.
std::vector<std::string> split_top_level(std::string_view text, char separator);

}  // namespace spinsys::text
