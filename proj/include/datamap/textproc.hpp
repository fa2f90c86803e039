#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace datamap {

struct CleanText {
    std::string text;
    std::string provenance;  // record id the text came from
};

struct SentenceContext {
    std::string record_id;
    std::size_t index = 0;  // 0-based ordinal within the document
    std::string text;
    bool mentions_data = false;
    std::optional<std::string> trigger;  // set iff mentions_data
};

// Normalizes raw converter output: NFC, CRs dropped, line-break hyphenation
// joined (letter + "-" + newline + lowercase letter), form feeds and
// newlines become spaces, whitespace runs collapsed to one space, ends
// trimmed. Idempotent.
CleanText clean_text(const std::string& raw, const std::string& provenance = {});

// Splits on . ! ? followed by a space and an uppercase letter or digit,
// with an abbreviation guard list (Fig., et al., e.g., i.e., No., ...).
// Joining the sentences back with single spaces reconstructs the cleaned
// text.
std::vector<SentenceContext> segment_sentences(const CleanText& clean);

// data, dataset(s), data set(s), database(s).
const std::vector<std::string>& default_trigger_lexicon();

// Flags sentences containing any lexicon lexeme, matched case-insensitively
// at word boundaries; the trigger records the leftmost (then longest) match.
std::vector<SentenceContext> detect_data_sentences(std::vector<SentenceContext> sentences,
                                                   const std::vector<std::string>& lexicon);

}  // namespace datamap
