#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace datamap {

enum class DocType { article, conference_paper, other };
enum class SourceType { journal, conference_proceeding, other };
enum class PubStage { final, in_press, preprint, other };
enum class SdgRelevance { yes, no, unreviewed };

std::string to_string(DocType v);
std::string to_string(SourceType v);
std::string to_string(PubStage v);
std::string to_string(SdgRelevance v);

// One bibliographic entry as exported from a literature database.
struct DocumentRecord {
    std::string id;
    std::string title;
    std::string abstract;
    std::vector<std::string> keywords;
    int year = 0;
    DocType doc_type = DocType::other;
    SourceType source_type = SourceType::other;
    PubStage pub_stage = PubStage::other;
    std::string language;
    bool full_text_accessible = false;
    SdgRelevance sdg_relevant = SdgRelevance::unreviewed;
    std::optional<std::string> link;

    bool operator==(const DocumentRecord&) const = default;
};

// Inclusion/exclusion criteria. Empty sets mean "no restriction"; min_year
// is an exclusive lower bound ("published after"), so the default of 2015
// retains year >= 2016.
struct SelectionCriteria {
    int min_year = 0;
    std::set<DocType> allowed_doc_types;
    std::set<SourceType> allowed_source_types;
    std::set<PubStage> allowed_pub_stages;
    std::set<std::string> allowed_languages;  // compared case-insensitively
    bool require_full_text = false;
    bool require_sdg_relevance = false;

    // Journal/conference articles in English, final stage, published after
    // 2015, full text available and human-confirmed SDG relevance.
    static SelectionCriteria sdg_defaults();

    nlohmann::json to_json() const;
    static SelectionCriteria from_json(const nlohmann::json& j);
};

struct FilterStage {
    std::string criterion;
    std::size_t input = 0;
    std::size_t excluded = 0;
    std::size_t output = 0;
};

struct FilterReport {
    std::vector<FilterStage> stages;
    std::vector<DocumentRecord> retained;

    std::vector<std::string> retained_ids() const;
    nlohmann::json to_json() const;
};

// Parse a UTF-8 CSV export with header
// id,title,abstract,keywords,year,doc_type,source_type,pub_stage,language,
// full_text_accessible,sdg_relevant,link. Keywords are ';'-delimited within
// the cell. At least id, title and year must be present in the header.
// Missing optional cells default to sdg_relevant=unreviewed,
// full_text_accessible=false. Throws CsvError naming the data row and
// column on malformed values and on duplicate ids (naming both rows).
std::vector<DocumentRecord> parse_records(const std::filesystem::path& file);
std::vector<DocumentRecord> parse_records_text(const std::string& csv_text);

// Applies the criteria as a fixed funnel: year -> doc_type -> source_type
// -> pub_stage -> language -> full_text -> sdg_relevance. The retained set
// is the conjunction of all predicates; only the per-stage excluded counts
// depend on this order.
FilterReport apply_criteria(const std::vector<DocumentRecord>& records,
                            const SelectionCriteria& criteria);

}  // namespace datamap
