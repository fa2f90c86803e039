#include "datamap/mapping.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "datamap/errors.hpp"

namespace datamap {

using nlohmann::json;

std::string to_string(CountingMode mode) {
    return mode == CountingMode::document_frequency ? "document-frequency"
                                                    : "mention-frequency";
}

CountingMode counting_mode_from_string(std::string_view s) {
    if (s == "document-frequency") {
        return CountingMode::document_frequency;
    }
    if (s == "mention-frequency") {
        return CountingMode::mention_frequency;
    }
    throw ConfigError("unknown counting mode: " + std::string(s));
}

namespace {

std::uint64_t rollup(const TaxonomyNode& node,
                     const std::map<std::string, std::uint64_t>& leaf_counts,
                     std::map<std::string, std::uint64_t>& rolled) {
    std::uint64_t total = 0;
    if (node.is_leaf()) {
        auto it = leaf_counts.find(node.path);
        total = it == leaf_counts.end() ? 0 : it->second;
    } else {
        for (const auto& child : node.children) {
            total += rollup(child, leaf_counts, rolled);
        }
    }
    rolled[node.path] = total;
    return total;
}

}  // namespace

DataMapping aggregate(const std::vector<DocumentLabels>& labels, const TaxonomyNode& taxonomy,
                      CountingMode mode) {
    DataMapping mapping;
    mapping.taxonomy = taxonomy;
    mapping.counting_mode = mode;
    mapping.corpus_size = labels.size();

    // Every leaf is present in leaf_counts, zero or not.
    for (const auto& leaf : taxonomy.leaf_paths()) {
        mapping.leaf_counts[leaf] = 0;
    }

    for (const auto& doc : labels) {
        if (doc.evidence.empty()) {
            ++mapping.unlabeled_count;
            continue;
        }
        for (const auto& [label, spans] : doc.evidence) {
            auto it = mapping.leaf_counts.find(label);
            if (it == mapping.leaf_counts.end() || !taxonomy.has_leaf(label)) {
                throw AggregationError(doc.record_id, label);
            }
            it->second += mode == CountingMode::document_frequency
                              ? 1
                              : static_cast<std::uint64_t>(spans.size());
        }
    }

    rollup(taxonomy, mapping.leaf_counts, mapping.rolled_counts);
    return mapping;
}

ProportionTable proportions(const DataMapping& mapping, std::string_view node_path) {
    const TaxonomyNode* node = mapping.taxonomy.find(node_path);
    if (node == nullptr) {
        throw Error("no taxonomy node at path '" + std::string(node_path) + "'");
    }
    ProportionTable table;
    table.node = node->path;
    table.total = mapping.rolled_counts.at(node->path);
    if (table.total == 0) {
        table.zero_total = true;
        return table;
    }
    for (const auto& child : node->children) {
        ProportionRow row;
        row.path = child.path;
        row.count = mapping.rolled_counts.at(child.path);
        row.percent = 100.0 * static_cast<double>(row.count) / static_cast<double>(table.total);
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string format_percent(double percent) {
    // Half-up at one decimal: scale to tenths of a percent and round ties
    // away from zero.
    long long tenths = std::llround(percent * 10.0);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld.%lld", tenths / 10, std::llabs(tenths % 10));
    return buf;
}

std::string mapping_to_json(const DataMapping& mapping) {
    json j;
    j["counting_mode"] = to_string(mapping.counting_mode);
    j["corpus_size"] = mapping.corpus_size;
    j["unlabeled_count"] = mapping.unlabeled_count;
    j["leaf_counts"] = mapping.leaf_counts;
    json rolled(mapping.rolled_counts);
    // The root's path is the empty string; JSON keeps it as "".
    j["rolled_counts"] = std::move(rolled);
    j["taxonomy"] = json::parse(taxonomy_to_json(mapping.taxonomy));
    return j.dump(2) + "\n";
}

DataMapping mapping_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(std::string("bad mapping JSON: ") + e.what());
    }
    DataMapping mapping;
    mapping.taxonomy = parse_taxonomy_text(j.at("taxonomy").dump());
    mapping.counting_mode = counting_mode_from_string(j.value("counting_mode", "document-frequency"));
    mapping.corpus_size = j.value("corpus_size", 0u);
    mapping.unlabeled_count = j.value("unlabeled_count", 0u);
    for (const auto& leaf : mapping.taxonomy.leaf_paths()) {
        mapping.leaf_counts[leaf] = 0;
    }
    json leaf_counts = j.value("leaf_counts", json::object());
    for (const auto& [key, value] : leaf_counts.items()) {
        if (!mapping.taxonomy.has_leaf(key)) {
            throw Error("mapping leaf_counts key '" + key + "' is not a taxonomy leaf");
        }
        mapping.leaf_counts[key] = value.get<std::uint64_t>();
    }
    // Rollups are recomputed, not trusted.
    std::map<std::string, std::uint64_t> rolled;
    rollup(mapping.taxonomy, mapping.leaf_counts, rolled);
    mapping.rolled_counts = std::move(rolled);
    return mapping;
}

}  // namespace datamap
