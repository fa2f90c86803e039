#include "datamap/taxonomy.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "datamap/errors.hpp"
#include "datamap/hash.hpp"

namespace datamap {

using nlohmann::json;

std::string_view TaxonomyNode::segment() const {
    std::size_t slash = path.rfind('/');
    if (slash == std::string::npos) {
        return path;
    }
    return std::string_view(path).substr(slash + 1);
}

const TaxonomyNode* TaxonomyNode::find(std::string_view node_path) const {
    if (node_path == path) {
        return this;
    }
    for (const auto& child : children) {
        // Prune subtrees that cannot contain the target.
        if (node_path.size() >= child.path.size() &&
            node_path.substr(0, child.path.size()) == child.path &&
            (node_path.size() == child.path.size() || node_path[child.path.size()] == '/')) {
            return child.find(node_path);
        }
    }
    return nullptr;
}

bool TaxonomyNode::has_leaf(std::string_view node_path) const {
    const TaxonomyNode* node = find(node_path);
    return node != nullptr && node->is_leaf();
}

int TaxonomyNode::depth() const {
    int d = 0;
    for (const auto& child : children) {
        d = std::max(d, 1 + child.depth());
    }
    return d;
}

void TaxonomyNode::preorder(const std::function<void(const TaxonomyNode&, int)>& fn) const {
    std::function<void(const TaxonomyNode&, int)> walk = [&](const TaxonomyNode& node,
                                                             int depth) {
        fn(node, depth);
        for (const auto& child : node.children) {
            walk(child, depth + 1);
        }
    };
    walk(*this, 0);
}

std::vector<std::string> TaxonomyNode::leaf_paths() const {
    std::vector<std::string> out;
    preorder([&](const TaxonomyNode& node, int) {
        if (node.is_leaf()) {
            out.push_back(node.path);
        }
    });
    return out;
}

namespace {

bool valid_segment(const std::string& segment) {
    if (segment.empty()) {
        return false;
    }
    return segment.find('/') == std::string::npos &&
           std::none_of(segment.begin(), segment.end(), [](unsigned char c) {
               return c < 0x20 || c == 0x7F || c == ' ';
           });
}

TaxonomyNode build_node(const json& j, const std::string& parent_path, bool is_root,
                        std::set<std::string>& seen_paths,
                        std::vector<std::string>& violations) {
    TaxonomyNode node;
    std::string segment;
    if (!is_root) {
        segment = j.value("segment", j.value("path-segment", ""));
        if (!valid_segment(segment)) {
            violations.push_back("node under '" + parent_path + "' has a missing or invalid segment");
            segment = "?";
        }
        node.path = parent_path.empty() ? segment : parent_path + "/" + segment;
    }
    node.display_name = j.value("name", segment);

    if (j.contains("path")) {
        std::string declared = j.at("path").get<std::string>();
        if (declared != node.path) {
            violations.push_back("orphan node: declared path '" + declared +
                                 "' does not match computed path '" + node.path + "'");
        }
    }

    if (!is_root) {
        if (!seen_paths.insert(node.path).second) {
            violations.push_back("duplicate path '" + node.path + "'");
        }
    }

    if (j.contains("children")) {
        if (!j.at("children").is_array()) {
            violations.push_back("children of '" + node.path + "' is not an array");
        } else {
            for (const auto& cj : j.at("children")) {
                node.children.push_back(
                    build_node(cj, node.path, false, seen_paths, violations));
            }
        }
    }
    return node;
}

json node_to_json(const TaxonomyNode& node, bool is_root) {
    json j;
    if (!is_root) {
        j["segment"] = std::string(node.segment());
    }
    j["name"] = node.display_name;
    if (!node.children.empty()) {
        j["children"] = json::array();
        for (const auto& child : node.children) {
            j["children"].push_back(node_to_json(child, false));
        }
    }
    return j;
}

bool all_caps_abbreviation(const std::string& literal) {
    if (literal.empty() || literal.size() > 6) {
        return false;
    }
    return std::all_of(literal.begin(), literal.end(),
                       [](unsigned char c) { return c >= 'A' && c <= 'Z'; });
}

MatchMode match_mode_from_string(const std::string& s, const std::string& rule_id,
                                 std::vector<std::string>& violations) {
    if (s == "word-boundary") {
        return MatchMode::word_boundary;
    }
    if (s == "substring") {
        return MatchMode::substring;
    }
    violations.push_back("rule '" + rule_id + "': unknown match_mode '" + s + "'");
    return MatchMode::word_boundary;
}

}  // namespace

TaxonomyNode parse_taxonomy_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ValidationError({std::string("taxonomy is not valid JSON: ") + e.what()});
    }
    if (!j.is_object()) {
        throw ValidationError({"taxonomy root must be a JSON object"});
    }

    std::vector<std::string> violations;
    std::set<std::string> seen_paths;
    TaxonomyNode root = build_node(j, "", true, seen_paths, violations);

    // Exactly the two top-level branches, sources first.
    std::vector<std::string> branches;
    for (const auto& child : root.children) {
        branches.emplace_back(child.segment());
    }
    if (std::find(branches.begin(), branches.end(), "sources") == branches.end()) {
        violations.push_back("missing root branch 'sources'");
    }
    if (std::find(branches.begin(), branches.end(), "types") == branches.end()) {
        violations.push_back("missing root branch 'types'");
    }
    for (const auto& b : branches) {
        if (b != "sources" && b != "types") {
            violations.push_back("unexpected root branch '" + b + "'");
        }
    }

    if (!violations.empty()) {
        throw ValidationError(std::move(violations));
    }
    return root;
}

TaxonomyNode parse_taxonomy(const std::filesystem::path& file) {
    return parse_taxonomy_text(read_file(file));
}

std::string taxonomy_to_json(const TaxonomyNode& root) {
    return node_to_json(root, true).dump(2) + "\n";
}

DecisionList parse_rules_text(const std::string& json_text, const TaxonomyNode& taxonomy) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ValidationError({std::string("rules file is not valid JSON: ") + e.what()});
    }
    if (!j.is_array()) {
        throw ValidationError({"rules file must be a JSON array"});
    }

    std::vector<std::string> violations;
    std::set<std::string> seen_ids;
    DecisionList dlist;

    for (const auto& rj : j) {
        Rule rule;
        rule.id = rj.value("id", "");
        if (rule.id.empty()) {
            violations.push_back("rule without id");
        } else if (!seen_ids.insert(rule.id).second) {
            violations.push_back("duplicate rule id '" + rule.id + "'");
        }

        rule.label = rj.value("label", "");
        const TaxonomyNode* node = taxonomy.find(rule.label);
        if (node == nullptr) {
            violations.push_back("rule '" + rule.id + "': label '" + rule.label +
                                 "' not in taxonomy");
        } else if (!node->is_leaf()) {
            violations.push_back("rule '" + rule.id + "': label '" + rule.label +
                                 "' is not a leaf");
        }

        std::string scope = rj.value("scope", "data-sentence");
        if (scope == "data-sentence") {
            rule.scope = RuleScope::data_sentence;
        } else if (scope == "whole-document") {
            rule.scope = RuleScope::whole_document;
        } else {
            violations.push_back("rule '" + rule.id + "': unknown scope '" + scope + "'");
        }

        if (!rj.contains("patterns") || !rj.at("patterns").is_array() ||
            rj.at("patterns").empty()) {
            violations.push_back("rule '" + rule.id + "': patterns must be a non-empty array");
        } else {
            for (const auto& pj : rj.at("patterns")) {
                PatternSpec p;
                if (pj.is_string()) {
                    p.literal = pj.get<std::string>();
                } else {
                    p.literal = pj.value("literal", "");
                }
                if (p.literal.empty()) {
                    violations.push_back("rule '" + rule.id + "': empty pattern literal");
                }
                bool abbreviation = all_caps_abbreviation(p.literal);
                p.case_sensitive = abbreviation;
                p.match_mode = MatchMode::word_boundary;
                if (pj.is_object()) {
                    if (pj.contains("match_mode")) {
                        p.match_mode = match_mode_from_string(
                            pj.at("match_mode").get<std::string>(), rule.id, violations);
                    }
                    if (pj.contains("case_sensitive")) {
                        p.case_sensitive = pj.at("case_sensitive").get<bool>();
                    }
                }
                rule.patterns.push_back(std::move(p));
            }
        }
        dlist.rules.push_back(std::move(rule));
    }

    if (!violations.empty()) {
        throw ValidationError(std::move(violations));
    }
    return dlist;
}

DecisionList parse_rules(const std::filesystem::path& file, const TaxonomyNode& taxonomy) {
    return parse_rules_text(read_file(file), taxonomy);
}

std::string rules_to_json(const DecisionList& dlist) {
    json j = json::array();
    for (const auto& rule : dlist.rules) {
        json rj;
        rj["id"] = rule.id;
        rj["label"] = rule.label;
        rj["scope"] =
            rule.scope == RuleScope::data_sentence ? "data-sentence" : "whole-document";
        rj["patterns"] = json::array();
        for (const auto& p : rule.patterns) {
            rj["patterns"].push_back(
                {{"literal", p.literal},
                 {"match_mode",
                  p.match_mode == MatchMode::word_boundary ? "word-boundary" : "substring"},
                 {"case_sensitive", p.case_sensitive}});
        }
        j.push_back(std::move(rj));
    }
    return j.dump(2) + "\n";
}

}  // namespace datamap
