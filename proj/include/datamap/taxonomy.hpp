#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace datamap {

// One node of the data-entity hierarchy. The root has an empty path and
// exactly two branches, "sources" and "types"; every other node's path is
// its parent's path + "/" + its segment.
struct TaxonomyNode {
    std::string path;
    std::string display_name;
    std::vector<TaxonomyNode> children;

    bool is_leaf() const { return children.empty(); }
    std::string_view segment() const;

    // Node lookup by full path; the root matches "". Returns nullptr when
    // absent.
    const TaxonomyNode* find(std::string_view node_path) const;

    bool has_leaf(std::string_view node_path) const;

    // Depth of the deepest node below this one; a lone root is 0.
    int depth() const;

    // Depth-first, children in file order, root included.
    void preorder(const std::function<void(const TaxonomyNode&, int depth)>& fn) const;

    std::vector<std::string> leaf_paths() const;

    bool operator==(const TaxonomyNode&) const = default;
};

enum class MatchMode { word_boundary, substring };

struct PatternSpec {
    std::string literal;
    MatchMode match_mode = MatchMode::word_boundary;
    bool case_sensitive = false;

    bool operator==(const PatternSpec&) const = default;
};

enum class RuleScope { data_sentence, whole_document };

struct Rule {
    std::string id;
    std::string label;  // taxonomy leaf path
    std::vector<PatternSpec> patterns;
    RuleScope scope = RuleScope::data_sentence;

    bool operator==(const Rule&) const = default;
};

// Ordered rules; earlier rules take precedence over later ones on
// overlapping matches.
struct DecisionList {
    std::vector<Rule> rules;

    bool operator==(const DecisionList&) const = default;
};

// Taxonomy file: nested JSON objects {"name", "segment", "children"}; the
// root object carries no segment. An optional explicit "path" must agree
// with the computed one. Throws ValidationError listing every violation
// (duplicate paths, bad segments, orphaned paths, missing root branch).
TaxonomyNode parse_taxonomy_text(const std::string& json_text);
TaxonomyNode parse_taxonomy(const std::filesystem::path& file);

std::string taxonomy_to_json(const TaxonomyNode& root);

// Rules file: JSON array of {id, label, scope, patterns:[{literal,
// match_mode, case_sensitive}]}; array order is decision-list order.
// Omitted pattern flags default to word-boundary matching, case-insensitive
// except for all-caps literals of up to 6 letters (abbreviations such as
// "IEA"), which default to case-sensitive. Labels must resolve to leaves of
// the given taxonomy.
DecisionList parse_rules_text(const std::string& json_text, const TaxonomyNode& taxonomy);
DecisionList parse_rules(const std::filesystem::path& file, const TaxonomyNode& taxonomy);

std::string rules_to_json(const DecisionList& dlist);

}  // namespace datamap
