#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace datamap {

// Replaces ill-formed UTF-8 sequences with U+FFFD. Valid input is returned
// byte for byte.
std::string utf8_sanitize(std::string_view bytes);

// Decode well-formed UTF-8 (sanitize first if unsure).
std::vector<char32_t> utf8_decode(std::string_view text);

std::string utf8_encode(const std::vector<char32_t>& codepoints);

// Unicode NFC via ICU.
std::string nfc_normalize(const std::string& utf8);

bool is_letter(char32_t cp);
bool is_lowercase_letter(char32_t cp);
bool is_uppercase_letter(char32_t cp);
bool is_digit(char32_t cp);
bool is_white_space(char32_t cp);

// Word characters for boundary checks: letters, digits and underscore.
bool is_word_char(char32_t cp);

// Byte-level word-character test used by the matchers; non-ASCII lead/
// continuation bytes are resolved through the codepoint at that position.
bool is_word_byte(std::string_view text, std::size_t pos);

char ascii_lower(char c);

}  // namespace datamap
