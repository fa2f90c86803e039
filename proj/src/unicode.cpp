#include "datamap/unicode.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "datamap/errors.hpp"

namespace datamap {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

void append_utf8(std::string& out, char32_t cp) {
    if (cp <= 0x7F) {
        out.push_back(static_cast<char>(cp));
    } else if (cp <= 0x7FF) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp <= 0xFFFF) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Decodes the codepoint starting at pos. Returns (codepoint, byte length);
// ill-formed sequences yield (U+FFFD, 1).
std::pair<char32_t, std::size_t> decode_at(std::string_view text, std::size_t pos) {
    unsigned char b0 = static_cast<unsigned char>(text[pos]);
    if (b0 < 0x80) {
        return {b0, 1};
    }
    std::size_t len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return {kReplacement, 1};
    }
    if (pos + len > text.size()) {
        return {kReplacement, 1};
    }
    for (std::size_t i = 1; i < len; ++i) {
        unsigned char b = static_cast<unsigned char>(text[pos + i]);
        if ((b & 0xC0) != 0x80) {
            return {kReplacement, 1};
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    // Overlong forms, surrogates and out-of-range values are ill-formed.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
        return {kReplacement, 1};
    }
    return {cp, len};
}

}  // namespace

std::string utf8_sanitize(std::string_view bytes) {
    std::string out;
    out.reserve(bytes.size());
    std::size_t pos = 0;
    while (pos < bytes.size()) {
        auto [cp, len] = decode_at(bytes, pos);
        append_utf8(out, cp);
        pos += len;
    }
    return out;
}

std::vector<char32_t> utf8_decode(std::string_view text) {
    std::vector<char32_t> out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto [cp, len] = decode_at(text, pos);
        out.push_back(cp);
        pos += len;
    }
    return out;
}

std::string utf8_encode(const std::vector<char32_t>& codepoints) {
    std::string out;
    out.reserve(codepoints.size());
    for (char32_t cp : codepoints) {
        append_utf8(out, cp);
    }
    return out;
}

std::string nfc_normalize(const std::string& utf8) {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) {
        throw Error("ICU NFC normalizer unavailable");
    }
    icu::UnicodeString input = icu::UnicodeString::fromUTF8(utf8);
    icu::UnicodeString normalized = nfc->normalize(input, status);
    if (U_FAILURE(status)) {
        throw Error("NFC normalization failed");
    }
    std::string out;
    normalized.toUTF8String(out);
    return out;
}

bool is_letter(char32_t cp) {
    return u_isalpha(static_cast<UChar32>(cp)) != 0;
}

bool is_lowercase_letter(char32_t cp) {
    return u_islower(static_cast<UChar32>(cp)) != 0;
}

bool is_uppercase_letter(char32_t cp) {
    return u_isupper(static_cast<UChar32>(cp)) != 0;
}

bool is_digit(char32_t cp) {
    return u_isdigit(static_cast<UChar32>(cp)) != 0;
}

bool is_white_space(char32_t cp) {
    return u_isUWhiteSpace(static_cast<UChar32>(cp)) != 0;
}

bool is_word_char(char32_t cp) {
    return cp == U'_' || u_isalnum(static_cast<UChar32>(cp)) != 0;
}

bool is_word_byte(std::string_view text, std::size_t pos) {
    if (pos >= text.size()) {
        return false;
    }
    unsigned char b = static_cast<unsigned char>(text[pos]);
    if (b < 0x80) {
        return is_word_char(b);
    }
    // Walk back to the lead byte of the codepoint containing pos.
    std::size_t start = pos;
    while (start > 0 && (static_cast<unsigned char>(text[start]) & 0xC0) == 0x80) {
        --start;
    }
    auto [cp, len] = decode_at(text, start);
    (void)len;
    return is_word_char(cp);
}

char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace datamap
