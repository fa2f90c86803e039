#include "datamap/engine.hpp"

#include <algorithm>
#include <thread>

#include <json.hpp>

#include "datamap/errors.hpp"
#include "datamap/unicode.hpp"

namespace datamap {

using nlohmann::json;

namespace {

bool pattern_equals_at(const std::string& text, std::size_t pos, const PatternSpec& pattern) {
    if (pos + pattern.literal.size() > text.size()) {
        return false;
    }
    if (pattern.case_sensitive) {
        return text.compare(pos, pattern.literal.size(), pattern.literal) == 0;
    }
    for (std::size_t i = 0; i < pattern.literal.size(); ++i) {
        if (ascii_lower(text[pos + i]) != ascii_lower(pattern.literal[i])) {
            return false;
        }
    }
    return true;
}

bool pattern_matches_at(const std::string& text, std::size_t pos, const PatternSpec& pattern) {
    if (!pattern_equals_at(text, pos, pattern)) {
        return false;
    }
    if (pattern.match_mode == MatchMode::word_boundary) {
        if (pos > 0 && is_word_byte(text, pos - 1)) {
            return false;
        }
        std::size_t end = pos + pattern.literal.size();
        if (end < text.size() && is_word_byte(text, end)) {
            return false;
        }
    }
    return true;
}

using SpanList = std::vector<std::pair<std::size_t, std::size_t>>;

bool overlaps(const SpanList& mask, std::size_t start, std::size_t end) {
    return std::any_of(mask.begin(), mask.end(), [&](const auto& m) {
        return start < m.second && m.first < end;
    });
}

// Scans text left to right; at each position takes the longest pattern
// match that does not touch a masked span, then continues past it.
std::vector<MatchSpan> scan_sentence(const Rule& rule, const SentenceContext& sentence,
                                     const SpanList& mask) {
    std::vector<MatchSpan> spans;
    const std::string& text = sentence.text;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const PatternSpec* best = nullptr;
        for (const auto& pattern : rule.patterns) {
            if (!pattern_matches_at(text, pos, pattern)) {
                continue;
            }
            if (overlaps(mask, pos, pos + pattern.literal.size())) {
                continue;
            }
            if (best == nullptr || pattern.literal.size() > best->literal.size()) {
                best = &pattern;
            }
        }
        if (best == nullptr) {
            ++pos;
            continue;
        }
        MatchSpan span;
        span.sentence_index = sentence.index;
        span.start = pos;
        span.end = pos + best->literal.size();
        span.rule_id = rule.id;
        span.pattern_literal = best->literal;
        pos = span.end;
        spans.push_back(std::move(span));
    }
    return spans;
}

}  // namespace

std::vector<std::string> DocumentLabels::labels() const {
    std::vector<std::string> out;
    out.reserve(evidence.size());
    for (const auto& [label, spans] : evidence) {
        out.push_back(label);
    }
    return out;
}

std::vector<MatchSpan> match_rule(const Rule& rule, const SentenceContext& sentence) {
    return scan_sentence(rule, sentence, {});
}

DocumentLabels apply_decision_list(const DecisionList& dlist,
                                   const std::vector<SentenceContext>& sentences,
                                   const std::string& record_id) {
    DocumentLabels result;
    result.record_id = record_id;
    if (result.record_id.empty() && !sentences.empty()) {
        result.record_id = sentences.front().record_id;
    }

    // Spans consumed so far, per sentence index.
    std::vector<SpanList> masks(sentences.size());

    for (const auto& rule : dlist.rules) {
        for (std::size_t i = 0; i < sentences.size(); ++i) {
            const SentenceContext& sentence = sentences[i];
            if (rule.scope == RuleScope::data_sentence && !sentence.mentions_data) {
                continue;
            }
            std::vector<MatchSpan> spans = scan_sentence(rule, sentence, masks[i]);
            if (spans.empty()) {
                continue;
            }
            for (const auto& span : spans) {
                masks[i].emplace_back(span.start, span.end);
            }
            auto& evidence = result.evidence[rule.label];
            evidence.insert(evidence.end(), std::make_move_iterator(spans.begin()),
                            std::make_move_iterator(spans.end()));
        }
    }
    return result;
}

std::vector<DocumentLabels> label_corpus(const std::vector<CorpusDocument>& documents,
                                         const DecisionList& dlist, unsigned parallelism) {
    std::vector<DocumentLabels> results(documents.size());
    if (documents.empty()) {
        return results;
    }
    unsigned workers = std::max(1u, parallelism);
    workers = std::min<unsigned>(workers, static_cast<unsigned>(documents.size()));

    if (workers == 1) {
        for (std::size_t i = 0; i < documents.size(); ++i) {
            results[i] =
                apply_decision_list(dlist, documents[i].sentences, documents[i].record_id);
        }
        return results;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= documents.size()) {
                return;
            }
            results[i] =
                apply_decision_list(dlist, documents[i].sentences, documents[i].record_id);
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back(worker);
    }
    for (auto& t : threads) {
        t.join();
    }
    return results;
}

std::string labels_to_jsonl(const std::vector<DocumentLabels>& labels) {
    std::string out;
    for (const auto& doc : labels) {
        json j;
        j["record_id"] = doc.record_id;
        j["labels"] = doc.labels();
        json evidence = json::array();
        for (const auto& [label, spans] : doc.evidence) {
            for (const auto& span : spans) {
                evidence.push_back({{"label", label},
                                    {"sentence_index", span.sentence_index},
                                    {"start", span.start},
                                    {"end", span.end},
                                    {"rule_id", span.rule_id},
                                    {"pattern", span.pattern_literal}});
            }
        }
        j["evidence"] = std::move(evidence);
        out += j.dump();
        out.push_back('\n');
    }
    return out;
}

std::vector<DocumentLabels> labels_from_jsonl(const std::string& text) {
    std::vector<DocumentLabels> out;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) {
            end = text.size();
        }
        std::string line = text.substr(start, end - start);
        start = end + 1;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw Error(std::string("bad labels line: ") + e.what());
        }
        DocumentLabels doc;
        doc.record_id = j.value("record_id", "");
        for (const auto& ej : j.value("evidence", json::array())) {
            MatchSpan span;
            span.sentence_index = ej.value("sentence_index", 0u);
            span.start = ej.value("start", 0u);
            span.end = ej.value("end", 0u);
            span.rule_id = ej.value("rule_id", "");
            span.pattern_literal = ej.value("pattern", "");
            doc.evidence[ej.value("label", "")].push_back(std::move(span));
        }
        // Labels without evidence cannot occur from the engine, but a
        // hand-edited file may carry them; preserve the label set.
        for (const auto& lj : j.value("labels", json::array())) {
            std::string label = lj.get<std::string>();
            if (!doc.evidence.count(label)) {
                doc.evidence[label] = {};
            }
        }
        out.push_back(std::move(doc));
    }
    return out;
}

}  // namespace datamap
