#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "datamap/engine.hpp"
#include "datamap/taxonomy.hpp"

namespace datamap {

enum class CountingMode { document_frequency, mention_frequency };

std::string to_string(CountingMode mode);
CountingMode counting_mode_from_string(std::string_view s);

// Aggregated counts over a labeled corpus. rolled_counts covers every
// taxonomy node (the root under path ""), with each internal node's count
// equal to the sum over its children; leaves mirror leaf_counts.
struct DataMapping {
    TaxonomyNode taxonomy;
    CountingMode counting_mode = CountingMode::document_frequency;
    std::map<std::string, std::uint64_t> leaf_counts;
    std::map<std::string, std::uint64_t> rolled_counts;
    std::uint64_t corpus_size = 0;
    std::uint64_t unlabeled_count = 0;
};

// Document-frequency counts each (document, leaf) pair once;
// mention-frequency counts evidence spans. Labels outside the taxonomy
// throw AggregationError naming the record and path (guards external
// label files; engine output cannot trigger it).
DataMapping aggregate(const std::vector<DocumentLabels>& labels,
                      const TaxonomyNode& taxonomy,
                      CountingMode mode = CountingMode::document_frequency);

struct ProportionRow {
    std::string path;
    std::uint64_t count = 0;
    double percent = 0.0;  // full precision; format_percent for display
};

struct ProportionTable {
    std::string node;
    std::uint64_t total = 0;
    bool zero_total = false;
    std::vector<ProportionRow> rows;  // children in taxonomy order
};

// Children of node_path with their share of the node's rolled count. A
// zero-total node yields an empty table flagged zero_total (no division).
// Throws Error when the node does not exist.
ProportionTable proportions(const DataMapping& mapping, std::string_view node_path);

// Half-up to one decimal, e.g. 55.0.
std::string format_percent(double percent);

std::string mapping_to_json(const DataMapping& mapping);
DataMapping mapping_from_json(const std::string& json_text);

}  // namespace datamap
