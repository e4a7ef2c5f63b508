#include "spinsys/detail/text.hpp"

#include "spinsys/error.hpp"

#include <cctype>

namespace spinsys::text {

std::string normalize(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const auto c = static_cast<unsigned char>(raw[i]);
        if (std::isspace(c)) continue;
        // U+2212 MINUS SIGN
        if (c == 0xE2 && i + 2 < raw.size() && static_cast<unsigned char>(raw[i + 1]) == 0x88 &&
            static_cast<unsigned char>(raw[i + 2]) == 0x92) {
            out += '-';
            i += 2;
            continue;
        }
        // U+221A SQUARE ROOT
        if (c == 0xE2 && i + 2 < raw.size() && static_cast<unsigned char>(raw[i + 1]) == 0x88 &&
            static_cast<unsigned char>(raw[i + 2]) == 0x9A) {
            out += "sqrt";
            i += 2;
            continue;
        }
        out += static_cast<char>(c);
    }
    return out;
}

std::string strip_parentheses(const std::string& text) {
    if (text.size() < 2 || text.front() != '(' || text.back() != ')') return text;
    int depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        if (text[i] == ')') --depth;
        if (depth == 0 && i + 1 < text.size()) return text;
    }
    return text.substr(1, text.size() - 2);
}

boost::multiprecision::cpp_int parse_bigint(std::string_view text) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    if (pos == text.size()) throw ParseError("expected an integer, got '" + std::string(text) + "'");
    boost::multiprecision::cpp_int value = 0;
    for (; pos < text.size(); ++pos) {
        if (!std::isdigit(static_cast<unsigned char>(text[pos]))) {
            throw ParseError("expected an integer, got '" + std::string(text) + "'");
        }
        value = value * 10 + (text[pos] - '0');
    }
    return negative ? -value : value;
}

std::vector<std::string> split_top_level(std::string_view text, char separator) {
    std::vector<std::string> out;
    int depth = 0;
    std::string current;
    for (const char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == separator && depth == 0) {
            out.push_back(current);
            current.clear();
            continue;
        }
        current += c;
    }
    out.push_back(current);
    return out;
}

}  // namespace spinsys::text
