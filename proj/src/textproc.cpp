#include "datamap/textproc.hpp"

#include <algorithm>
#include <array>

#include "datamap/unicode.hpp"

namespace datamap {

namespace {

// Tokens whose trailing period does not end a sentence.
const std::array<std::string, 22> kAbbreviationGuards = {
    "Fig.",  "Figs.", "fig.",  "figs.", "et al.", "e.g.",  "i.e.",  "cf.",
    "vs.",   "No.",   "Nos.",  "Eq.",   "Eqs.",   "Sec.",  "Secs.", "Tab.",
    "Ref.",  "Refs.", "Dr.",   "Prof.", "approx.", "ca.",
};

bool is_sentence_terminator(char c) {
    return c == '.' || c == '!' || c == '?';
}

// True when the '.' at pos closes a guarded abbreviation.
bool guarded_abbreviation(const std::string& text, std::size_t pos) {
    for (const auto& guard : kAbbreviationGuards) {
        if (guard.size() > pos + 1) {
            continue;
        }
        std::size_t start = pos + 1 - guard.size();
        if (text.compare(start, guard.size(), guard) != 0) {
            continue;
        }
        // The guard must start at a word edge ("piaNo." is not "No.").
        if (start == 0 || !is_word_byte(text, start - 1)) {
            return true;
        }
    }
    return false;
}

struct WordMatch {
    std::size_t pos = std::string::npos;
    std::size_t length = 0;
    const std::string* lexeme = nullptr;
};

bool equals_ascii_ci(const std::string& text, std::size_t pos, const std::string& word) {
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (ascii_lower(text[pos + i]) != ascii_lower(word[i])) {
            return false;
        }
    }
    return true;
}

// Leftmost, then longest, case-insensitive word-boundary occurrence of any
// lexeme.
WordMatch find_first_lexeme(const std::string& text, const std::vector<std::string>& lexicon) {
    WordMatch best;
    for (std::size_t pos = 0; pos < text.size(); ++pos) {
        if (pos > 0 && is_word_byte(text, pos - 1)) {
            continue;  // not a word start
        }
        for (const auto& lexeme : lexicon) {
            if (lexeme.empty() || pos + lexeme.size() > text.size()) {
                continue;
            }
            if (!equals_ascii_ci(text, pos, lexeme)) {
                continue;
            }
            if (is_word_byte(text, pos + lexeme.size())) {
                continue;  // runs into a word character
            }
            if (best.lexeme == nullptr || lexeme.size() > best.length) {
                best = {pos, lexeme.size(), &lexeme};
            }
        }
        if (best.lexeme != nullptr) {
            return best;
        }
    }
    return best;
}

}  // namespace

CleanText clean_text(const std::string& raw, const std::string& provenance) {
    std::vector<char32_t> cps = utf8_decode(nfc_normalize(utf8_sanitize(raw)));

    // CRLF and lone CR become LF.
    std::vector<char32_t> lf;
    lf.reserve(cps.size());
    for (std::size_t i = 0; i < cps.size(); ++i) {
        if (cps[i] == U'\r') {
            if (i + 1 < cps.size() && cps[i + 1] == U'\n') {
                continue;
            }
            lf.push_back(U'\n');
        } else {
            lf.push_back(cps[i]);
        }
    }

    // Join line-break hyphenation: letter "-" \n lowercase-letter.
    std::vector<char32_t> joined;
    joined.reserve(lf.size());
    for (std::size_t i = 0; i < lf.size(); ++i) {
        if (lf[i] == U'-' && i > 0 && i + 2 < lf.size() && is_letter(lf[i - 1]) &&
            lf[i + 1] == U'\n' && is_lowercase_letter(lf[i + 2])) {
            ++i;  // drop the hyphen and the newline
            continue;
        }
        joined.push_back(lf[i]);
    }

    // Whitespace (including form feeds and newlines) collapses to single
    // spaces; ends trimmed.
    std::vector<char32_t> out;
    out.reserve(joined.size());
    bool pending_space = false;
    for (char32_t cp : joined) {
        if (is_white_space(cp) || cp == U'\f') {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(U' ');
            pending_space = false;
        }
        out.push_back(cp);
    }

    return CleanText{utf8_encode(out), provenance};
}

std::vector<SentenceContext> segment_sentences(const CleanText& clean) {
    const std::string& text = clean.text;
    std::vector<SentenceContext> sentences;
    std::size_t start = 0;

    auto emit = [&](std::size_t end) {  // [start, end)
        while (start < end && text[start] == ' ') {
            ++start;
        }
        std::size_t stop = end;
        while (stop > start && text[stop - 1] == ' ') {
            --stop;
        }
        if (stop > start) {
            SentenceContext s;
            s.record_id = clean.provenance;
            s.index = sentences.size();
            s.text = text.substr(start, stop - start);
            sentences.push_back(std::move(s));
        }
        start = end;
    };

    for (std::size_t pos = 0; pos < text.size(); ++pos) {
        if (!is_sentence_terminator(text[pos])) {
            continue;
        }
        if (pos + 2 >= text.size() || text[pos + 1] != ' ') {
            continue;
        }
        auto next = utf8_decode(text.substr(pos + 2, 4));
        if (next.empty() || !(is_uppercase_letter(next[0]) || is_digit(next[0]))) {
            continue;
        }
        if (text[pos] == '.' && guarded_abbreviation(text, pos)) {
            continue;
        }
        emit(pos + 1);
        ++start;  // consume the single separating space
    }
    emit(text.size());
    return sentences;
}

const std::vector<std::string>& default_trigger_lexicon() {
    static const std::vector<std::string> lexicon = {
        "data", "dataset", "datasets", "data set", "data sets", "database", "databases",
    };
    return lexicon;
}

std::vector<SentenceContext> detect_data_sentences(std::vector<SentenceContext> sentences,
                                                   const std::vector<std::string>& lexicon) {
    for (auto& sentence : sentences) {
        WordMatch m = find_first_lexeme(sentence.text, lexicon);
        if (m.lexeme != nullptr) {
            sentence.mentions_data = true;
            sentence.trigger = *m.lexeme;
        } else {
            sentence.mentions_data = false;
            sentence.trigger.reset();
        }
    }
    return sentences;
}

}  // namespace datamap
