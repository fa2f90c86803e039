#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "datamap/taxonomy.hpp"
#include "datamap/textproc.hpp"

namespace datamap {

// Evidence for one pattern occurrence. Offsets are byte offsets into the
// UTF-8 sentence text, start inclusive, end exclusive.
struct MatchSpan {
    std::size_t sentence_index = 0;
    std::size_t start = 0;
    std::size_t end = 0;
    std::string rule_id;
    std::string pattern_literal;

    bool operator==(const MatchSpan&) const = default;
};

// Taxonomy leaves attributed to one document, each backed by at least one
// matched span.
struct DocumentLabels {
    std::string record_id;
    std::map<std::string, std::vector<MatchSpan>> evidence;  // label -> spans

    std::vector<std::string> labels() const;
    bool operator==(const DocumentLabels&) const = default;
};

struct CorpusDocument {
    std::string record_id;
    std::vector<SentenceContext> sentences;
};

// All non-overlapping occurrences of any of the rule's patterns,
// leftmost-longest per position. Word-boundary patterns require non-word
// characters (or string edges) on both sides; case folding is applied per
// pattern flag.
std::vector<MatchSpan> match_rule(const Rule& rule, const SentenceContext& sentence);

// Rules are evaluated in list order. Rules scoped to data sentences see
// only sentences with mentions_data set; whole-document rules see every
// sentence. Character spans consumed by an earlier rule are masked for
// later rules. The label set is the union over all rules that matched.
DocumentLabels apply_decision_list(const DecisionList& dlist,
                                   const std::vector<SentenceContext>& sentences,
                                   const std::string& record_id = {});

// One DocumentLabels per document, in input order. Documents are
// independent; parallelism > 1 splits them over worker threads with the
// results merged back in input order.
std::vector<DocumentLabels> label_corpus(const std::vector<CorpusDocument>& documents,
                                         const DecisionList& dlist,
                                         unsigned parallelism = 1);

// JSON-lines wire format, one object per document:
// {"record_id", "labels":[path], "evidence":[{label, sentence_index, start,
// end, rule_id, pattern}]}.
std::string labels_to_jsonl(const std::vector<DocumentLabels>& labels);
std::vector<DocumentLabels> labels_from_jsonl(const std::string& text);

}  // namespace datamap
