#include "datamap/corpus.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "datamap/csv.hpp"
#include "datamap/errors.hpp"
#include "datamap/hash.hpp"

namespace datamap {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

// Normalizes an enum cell: lowercase, spaces and underscores to hyphens.
std::string enum_key(const std::string& raw) {
    std::string s = lower(trim(raw));
    for (char& c : s) {
        if (c == ' ' || c == '_') {
            c = '-';
        }
    }
    return s;
}

DocType parse_doc_type(const std::string& raw) {
    std::string k = enum_key(raw);
    if (k == "article") return DocType::article;
    if (k == "conference-paper") return DocType::conference_paper;
    return DocType::other;
}

SourceType parse_source_type(const std::string& raw) {
    std::string k = enum_key(raw);
    if (k == "journal") return SourceType::journal;
    if (k == "conference-proceeding" || k == "conference-proceedings") {
        return SourceType::conference_proceeding;
    }
    return SourceType::other;
}

PubStage parse_pub_stage(const std::string& raw) {
    std::string k = enum_key(raw);
    if (k == "final") return PubStage::final;
    if (k == "in-press") return PubStage::in_press;
    if (k == "preprint") return PubStage::preprint;
    return PubStage::other;
}

}  // namespace

std::string to_string(DocType v) {
    switch (v) {
        case DocType::article: return "article";
        case DocType::conference_paper: return "conference-paper";
        default: return "other";
    }
}

std::string to_string(SourceType v) {
    switch (v) {
        case SourceType::journal: return "journal";
        case SourceType::conference_proceeding: return "conference-proceeding";
        default: return "other";
    }
}

std::string to_string(PubStage v) {
    switch (v) {
        case PubStage::final: return "final";
        case PubStage::in_press: return "in-press";
        case PubStage::preprint: return "preprint";
        default: return "other";
    }
}

std::string to_string(SdgRelevance v) {
    switch (v) {
        case SdgRelevance::yes: return "yes";
        case SdgRelevance::no: return "no";
        default: return "unreviewed";
    }
}

SelectionCriteria SelectionCriteria::sdg_defaults() {
    SelectionCriteria c;
    c.min_year = 2015;  // the goals did not exist earlier
    c.allowed_doc_types = {DocType::article, DocType::conference_paper};
    c.allowed_source_types = {SourceType::journal, SourceType::conference_proceeding};
    c.allowed_pub_stages = {PubStage::final};
    c.allowed_languages = {"en"};
    c.require_full_text = true;
    c.require_sdg_relevance = true;
    return c;
}

nlohmann::json SelectionCriteria::to_json() const {
    nlohmann::json j;
    j["min_year"] = min_year;
    auto names = [](const auto& set, auto fn) {
        std::vector<std::string> out;
        for (const auto& v : set) {
            out.push_back(fn(v));
        }
        return out;
    };
    j["allowed_doc_types"] =
        names(allowed_doc_types, [](DocType v) { return to_string(v); });
    j["allowed_source_types"] =
        names(allowed_source_types, [](SourceType v) { return to_string(v); });
    j["allowed_pub_stages"] =
        names(allowed_pub_stages, [](PubStage v) { return to_string(v); });
    j["allowed_languages"] = std::vector<std::string>(allowed_languages.begin(),
                                                      allowed_languages.end());
    j["require_full_text"] = require_full_text;
    j["require_sdg_relevance"] = require_sdg_relevance;
    return j;
}

SelectionCriteria SelectionCriteria::from_json(const nlohmann::json& j) {
    SelectionCriteria c;  // vacuous baseline; only listed keys restrict
    c.min_year = j.value("min_year", 2015);  // the goals started in 2015
    if (j.contains("allowed_doc_types")) {
        for (const auto& v : j.at("allowed_doc_types")) {
            c.allowed_doc_types.insert(parse_doc_type(v.get<std::string>()));
        }
    }
    if (j.contains("allowed_source_types")) {
        for (const auto& v : j.at("allowed_source_types")) {
            c.allowed_source_types.insert(parse_source_type(v.get<std::string>()));
        }
    }
    if (j.contains("allowed_pub_stages")) {
        for (const auto& v : j.at("allowed_pub_stages")) {
            c.allowed_pub_stages.insert(parse_pub_stage(v.get<std::string>()));
        }
    }
    if (j.contains("allowed_languages")) {
        for (const auto& v : j.at("allowed_languages")) {
            c.allowed_languages.insert(lower(trim(v.get<std::string>())));
        }
    }
    c.require_full_text = j.value("require_full_text", false);
    c.require_sdg_relevance = j.value("require_sdg_relevance", false);
    return c;
}

std::vector<std::string> FilterReport::retained_ids() const {
    std::vector<std::string> ids;
    ids.reserve(retained.size());
    for (const auto& r : retained) {
        ids.push_back(r.id);
    }
    return ids;
}

nlohmann::json FilterReport::to_json() const {
    nlohmann::json j;
    j["stages"] = nlohmann::json::array();
    for (const auto& s : stages) {
        j["stages"].push_back({{"criterion", s.criterion},
                               {"input", s.input},
                               {"excluded", s.excluded},
                               {"output", s.output}});
    }
    j["retained_ids"] = retained_ids();
    return j;
}

std::vector<DocumentRecord> parse_records(const std::filesystem::path& file) {
    return parse_records_text(read_file(file));
}

std::vector<DocumentRecord> parse_records_text(const std::string& csv_text) {
    csv::Table table = csv::parse(csv_text);

    std::unordered_map<std::string, std::size_t> columns;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        columns[lower(trim(table.header[i]))] = i;
    }
    for (const char* required : {"id", "title", "year"}) {
        if (!columns.count(required)) {
            throw CsvError(std::string("missing required column '") + required + "' in header",
                           0, required);
        }
    }

    auto cell = [&](const csv::Row& row, const char* name) -> std::string {
        auto it = columns.find(name);
        if (it == columns.end() || it->second >= row.fields.size()) {
            return {};
        }
        return row.fields[it->second];
    };

    std::vector<DocumentRecord> records;
    records.reserve(table.rows.size());
    std::unordered_map<std::string, std::size_t> seen_ids;

    for (const auto& row : table.rows) {
        DocumentRecord rec;
        rec.id = trim(cell(row, "id"));
        if (rec.id.empty()) {
            throw CsvError("row " + std::to_string(row.number) + ": empty id", row.number, "id");
        }
        if (auto it = seen_ids.find(rec.id); it != seen_ids.end()) {
            throw CsvError("duplicate id '" + rec.id + "' in rows " +
                               std::to_string(it->second) + " and " + std::to_string(row.number),
                           row.number, "id");
        }
        seen_ids[rec.id] = row.number;

        rec.title = cell(row, "title");
        rec.abstract = cell(row, "abstract");

        std::string kw = cell(row, "keywords");
        std::size_t start = 0;
        while (start <= kw.size() && !kw.empty()) {
            std::size_t sep = kw.find(';', start);
            std::string part = trim(kw.substr(start, sep == std::string::npos
                                                         ? std::string::npos
                                                         : sep - start));
            if (!part.empty()) {
                rec.keywords.push_back(part);
            }
            if (sep == std::string::npos) {
                break;
            }
            start = sep + 1;
        }

        std::string year_cell = trim(cell(row, "year"));
        try {
            std::size_t used = 0;
            rec.year = std::stoi(year_cell, &used);
            if (used != year_cell.size() || rec.year <= 0) {
                throw std::invalid_argument("");
            }
        } catch (const std::exception&) {
            throw CsvError("row " + std::to_string(row.number) + ": invalid year '" +
                               year_cell + "'",
                           row.number, "year");
        }

        rec.doc_type = parse_doc_type(cell(row, "doc_type"));
        rec.source_type = parse_source_type(cell(row, "source_type"));
        rec.pub_stage = parse_pub_stage(cell(row, "pub_stage"));
        rec.language = lower(trim(cell(row, "language")));

        std::string ft = enum_key(cell(row, "full_text_accessible"));
        if (ft.empty()) {
            rec.full_text_accessible = false;
        } else if (ft == "true" || ft == "1" || ft == "yes") {
            rec.full_text_accessible = true;
        } else if (ft == "false" || ft == "0" || ft == "no") {
            rec.full_text_accessible = false;
        } else {
            throw CsvError("row " + std::to_string(row.number) +
                               ": invalid full_text_accessible '" + ft + "'",
                           row.number, "full_text_accessible");
        }

        std::string rel = enum_key(cell(row, "sdg_relevant"));
        if (rel.empty() || rel == "unreviewed") {
            rec.sdg_relevant = SdgRelevance::unreviewed;
        } else if (rel == "yes") {
            rec.sdg_relevant = SdgRelevance::yes;
        } else if (rel == "no") {
            rec.sdg_relevant = SdgRelevance::no;
        } else {
            throw CsvError("row " + std::to_string(row.number) + ": invalid sdg_relevant '" +
                               rel + "'",
                           row.number, "sdg_relevant");
        }

        std::string link = trim(cell(row, "link"));
        if (!link.empty()) {
            rec.link = link;
        }
        records.push_back(std::move(rec));
    }
    return records;
}

FilterReport apply_criteria(const std::vector<DocumentRecord>& records,
                            const SelectionCriteria& criteria) {
    std::set<std::string> languages;
    for (const auto& lang : criteria.allowed_languages) {
        languages.insert(lower(lang));
    }
    using Predicate = std::function<bool(const DocumentRecord&)>;
    const std::pair<const char*, Predicate> stages[] = {
        {"year", [&](const DocumentRecord& r) { return r.year > criteria.min_year; }},
        {"doc_type",
         [&](const DocumentRecord& r) {
             return criteria.allowed_doc_types.empty() ||
                    criteria.allowed_doc_types.count(r.doc_type) > 0;
         }},
        {"source_type",
         [&](const DocumentRecord& r) {
             return criteria.allowed_source_types.empty() ||
                    criteria.allowed_source_types.count(r.source_type) > 0;
         }},
        {"pub_stage",
         [&](const DocumentRecord& r) {
             return criteria.allowed_pub_stages.empty() ||
                    criteria.allowed_pub_stages.count(r.pub_stage) > 0;
         }},
        {"language",
         [&](const DocumentRecord& r) {
             return languages.empty() || languages.count(lower(r.language)) > 0;
         }},
        {"full_text",
         [&](const DocumentRecord& r) {
             return !criteria.require_full_text || r.full_text_accessible;
         }},
        {"sdg_relevance",
         [&](const DocumentRecord& r) {
             return !criteria.require_sdg_relevance || r.sdg_relevant == SdgRelevance::yes;
         }},
    };

    FilterReport report;
    std::vector<DocumentRecord> current = records;
    for (const auto& [name, pred] : stages) {
        FilterStage stage;
        stage.criterion = name;
        stage.input = current.size();
        std::vector<DocumentRecord> next;
        next.reserve(current.size());
        for (auto& r : current) {
            if (pred(r)) {
                next.push_back(std::move(r));
            }
        }
        stage.output = next.size();
        stage.excluded = stage.input - stage.output;
        report.stages.push_back(stage);
        current = std::move(next);
    }
    report.retained = std::move(current);
    return report;
}

}  // namespace datamap
