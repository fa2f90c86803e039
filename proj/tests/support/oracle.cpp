#include "support/oracle.hpp"

#include <cctype>

namespace datamap::testing {

namespace {

bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' ||
           static_cast<unsigned char>(c) >= 0x80;
}

bool chars_equal(char a, char b, bool case_sensitive) {
    if (case_sensitive) {
        return a == b;
    }
    return std::tolower(static_cast<unsigned char>(a)) ==
           std::tolower(static_cast<unsigned char>(b));
}

bool literal_at(const std::string& text, std::size_t pos, const PatternSpec& p) {
    if (pos + p.literal.size() > text.size()) {
        return false;
    }
    for (std::size_t i = 0; i < p.literal.size(); ++i) {
        if (!chars_equal(text[pos + i], p.literal[i], p.case_sensitive)) {
            return false;
        }
    }
    if (p.match_mode == MatchMode::word_boundary) {
        if (pos > 0 && word_char(text[pos - 1])) {
            return false;
        }
        std::size_t after = pos + p.literal.size();
        if (after < text.size() && word_char(text[after])) {
            return false;
        }
    }
    return true;
}

bool touches_any(const std::vector<std::pair<std::size_t, std::size_t>>& used,
                 std::size_t start, std::size_t end) {
    for (const auto& [s, e] : used) {
        if (start < e && s < end) {
            return true;
        }
    }
    return false;
}

}  // namespace

OracleResult naive_label_document(const DecisionList& dlist,
                                  const std::vector<SentenceContext>& sentences) {
    OracleResult result;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> used(sentences.size());

    for (const auto& rule : dlist.rules) {
        for (std::size_t si = 0; si < sentences.size(); ++si) {
            const auto& sentence = sentences[si];
            if (rule.scope == RuleScope::data_sentence && !sentence.mentions_data) {
                continue;
            }
            std::size_t pos = 0;
            while (pos < sentence.text.size()) {
                // Longest unmasked pattern match at this position.
                const PatternSpec* hit = nullptr;
                for (const auto& p : rule.patterns) {
                    if (!literal_at(sentence.text, pos, p)) {
                        continue;
                    }
                    if (touches_any(used[si], pos, pos + p.literal.size())) {
                        continue;
                    }
                    if (hit == nullptr || p.literal.size() > hit->literal.size()) {
                        hit = &p;
                    }
                }
                if (hit == nullptr) {
                    ++pos;
                    continue;
                }
                std::size_t end = pos + hit->literal.size();
                used[si].emplace_back(pos, end);
                result.labels.insert(rule.label);
                result.evidence[rule.label].push_back({sentence.index, pos, end});
                pos = end;
            }
        }
    }
    return result;
}

}  // namespace datamap::testing
