#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <json.hpp>

#include "datamap/corpus.hpp"
#include "datamap/engine.hpp"
#include "datamap/errors.hpp"
#include "datamap/ingest.hpp"
#include "datamap/mapping.hpp"
#include "datamap/pipeline.hpp"
#include "datamap/report.hpp"
#include "datamap/taxonomy.hpp"
#include "datamap/textproc.hpp"

namespace py = pybind11;
using namespace datamap;

namespace {

py::object json_to_py(const nlohmann::json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::null:
            return py::none();
        case nlohmann::json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case nlohmann::json::value_t::number_integer:
            return py::int_(j.get<long long>());
        case nlohmann::json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case nlohmann::json::value_t::number_float:
            return py::float_(j.get<double>());
        case nlohmann::json::value_t::string:
            return py::str(j.get<std::string>());
        case nlohmann::json::value_t::array: {
            py::list out;
            for (const auto& item : j) {
                out.append(json_to_py(item));
            }
            return out;
        }
        case nlohmann::json::value_t::object: {
            py::dict out;
            for (const auto& [key, value] : j.items()) {
                out[py::str(key)] = json_to_py(value);
            }
            return out;
        }
        default:
            return py::none();
    }
}

}  // namespace

PYBIND11_MODULE(_datamap, m) {
    m.doc() = "Rule-based discovery of data sources and data types in research corpora";

#ifdef DATAMAP_VERSION
    m.attr("__version__") = DATAMAP_VERSION;
#else
    m.attr("__version__") = "dev";
#endif

    static py::exception<Error> base_exc(m, "DatamapError");
    py::register_exception<ConfigError>(m, "ConfigError", base_exc);
    py::register_exception<ValidationError>(m, "ValidationError", base_exc);
    py::register_exception<CsvError>(m, "CsvError", base_exc);
    py::register_exception<MissingDocumentError>(m, "MissingDocumentError", base_exc);
    py::register_exception<ConversionError>(m, "ConversionError", base_exc);
    py::register_exception<AggregationError>(m, "AggregationError", base_exc);
    py::register_exception<StageError>(m, "StageError", base_exc);

    py::enum_<DocType>(m, "DocType")
        .value("article", DocType::article)
        .value("conference_paper", DocType::conference_paper)
        .value("other", DocType::other);
    py::enum_<SourceType>(m, "SourceType")
        .value("journal", SourceType::journal)
        .value("conference_proceeding", SourceType::conference_proceeding)
        .value("other", SourceType::other);
    py::enum_<PubStage>(m, "PubStage")
        .value("final", PubStage::final)
        .value("in_press", PubStage::in_press)
        .value("preprint", PubStage::preprint)
        .value("other", PubStage::other);
    py::enum_<SdgRelevance>(m, "SdgRelevance")
        .value("yes", SdgRelevance::yes)
        .value("no", SdgRelevance::no)
        .value("unreviewed", SdgRelevance::unreviewed);
    py::enum_<MatchMode>(m, "MatchMode")
        .value("word_boundary", MatchMode::word_boundary)
        .value("substring", MatchMode::substring);
    py::enum_<RuleScope>(m, "RuleScope")
        .value("data_sentence", RuleScope::data_sentence)
        .value("whole_document", RuleScope::whole_document);

    py::class_<DocumentRecord>(m, "DocumentRecord")
        .def(py::init<>())
        .def_readwrite("id", &DocumentRecord::id)
        .def_readwrite("title", &DocumentRecord::title)
        .def_readwrite("abstract", &DocumentRecord::abstract)
        .def_readwrite("keywords", &DocumentRecord::keywords)
        .def_readwrite("year", &DocumentRecord::year)
        .def_readwrite("doc_type", &DocumentRecord::doc_type)
        .def_readwrite("source_type", &DocumentRecord::source_type)
        .def_readwrite("pub_stage", &DocumentRecord::pub_stage)
        .def_readwrite("language", &DocumentRecord::language)
        .def_readwrite("full_text_accessible", &DocumentRecord::full_text_accessible)
        .def_readwrite("sdg_relevant", &DocumentRecord::sdg_relevant)
        .def_readwrite("link", &DocumentRecord::link)
        .def("__repr__", [](const DocumentRecord& r) {
            return "<DocumentRecord id='" + r.id + "' year=" + std::to_string(r.year) + ">";
        });

    py::class_<SelectionCriteria>(m, "SelectionCriteria")
        .def(py::init<>())
        .def_static("sdg_defaults", &SelectionCriteria::sdg_defaults)
        .def_readwrite("min_year", &SelectionCriteria::min_year)
        .def_readwrite("allowed_doc_types", &SelectionCriteria::allowed_doc_types)
        .def_readwrite("allowed_source_types", &SelectionCriteria::allowed_source_types)
        .def_readwrite("allowed_pub_stages", &SelectionCriteria::allowed_pub_stages)
        .def_readwrite("allowed_languages", &SelectionCriteria::allowed_languages)
        .def_readwrite("require_full_text", &SelectionCriteria::require_full_text)
        .def_readwrite("require_sdg_relevance", &SelectionCriteria::require_sdg_relevance);

    py::class_<FilterStage>(m, "FilterStage")
        .def_readonly("criterion", &FilterStage::criterion)
        .def_readonly("input", &FilterStage::input)
        .def_readonly("excluded", &FilterStage::excluded)
        .def_readonly("output", &FilterStage::output);

    py::class_<FilterReport>(m, "FilterReport")
        .def_readonly("stages", &FilterReport::stages)
        .def_readonly("retained", &FilterReport::retained)
        .def("retained_ids", &FilterReport::retained_ids)
        .def("to_json", [](const FilterReport& r) { return json_to_py(r.to_json()); });

    m.def("parse_records", &parse_records, py::arg("file"));
    m.def("parse_records_text", &parse_records_text, py::arg("csv_text"));
    m.def("apply_criteria", &apply_criteria, py::arg("records"), py::arg("criteria"));

    py::class_<CleanText>(m, "CleanText")
        .def_readonly("text", &CleanText::text)
        .def_readonly("provenance", &CleanText::provenance);

    py::class_<SentenceContext>(m, "SentenceContext")
        .def(py::init<>())
        .def_readwrite("record_id", &SentenceContext::record_id)
        .def_readwrite("index", &SentenceContext::index)
        .def_readwrite("text", &SentenceContext::text)
        .def_readwrite("mentions_data", &SentenceContext::mentions_data)
        .def_readwrite("trigger", &SentenceContext::trigger);

    m.def("clean_text", &clean_text, py::arg("raw"), py::arg("provenance") = std::string());
    m.def("segment_sentences", &segment_sentences, py::arg("clean"));
    m.def("default_trigger_lexicon",
          []() { return default_trigger_lexicon(); });
    m.def(
        "detect_data_sentences",
        [](std::vector<SentenceContext> sentences, std::optional<std::vector<std::string>> lexicon) {
            return detect_data_sentences(std::move(sentences),
                                         lexicon ? *lexicon : default_trigger_lexicon());
        },
        py::arg("sentences"), py::arg("lexicon") = py::none());

    py::class_<TaxonomyNode>(m, "TaxonomyNode")
        .def_readonly("path", &TaxonomyNode::path)
        .def_readonly("display_name", &TaxonomyNode::display_name)
        .def_readonly("children", &TaxonomyNode::children)
        .def("is_leaf", &TaxonomyNode::is_leaf)
        .def("depth", &TaxonomyNode::depth)
        .def("leaf_paths", &TaxonomyNode::leaf_paths)
        .def("has_leaf", &TaxonomyNode::has_leaf, py::arg("path"))
        .def("__repr__", [](const TaxonomyNode& n) {
            return "<TaxonomyNode '" + (n.path.empty() ? std::string("<root>") : n.path) +
                   "' children=" + std::to_string(n.children.size()) + ">";
        });

    py::class_<PatternSpec>(m, "PatternSpec")
        .def(py::init<>())
        .def_readwrite("literal", &PatternSpec::literal)
        .def_readwrite("match_mode", &PatternSpec::match_mode)
        .def_readwrite("case_sensitive", &PatternSpec::case_sensitive);

    py::class_<Rule>(m, "Rule")
        .def(py::init<>())
        .def_readwrite("id", &Rule::id)
        .def_readwrite("label", &Rule::label)
        .def_readwrite("patterns", &Rule::patterns)
        .def_readwrite("scope", &Rule::scope);

    py::class_<DecisionList>(m, "DecisionList")
        .def(py::init<>())
        .def_readwrite("rules", &DecisionList::rules);

    m.def("parse_taxonomy", &parse_taxonomy, py::arg("file"));
    m.def("parse_taxonomy_text", &parse_taxonomy_text, py::arg("json_text"));
    m.def("taxonomy_to_json", &taxonomy_to_json, py::arg("root"));
    m.def("parse_rules", &parse_rules, py::arg("file"), py::arg("taxonomy"));
    m.def("parse_rules_text", &parse_rules_text, py::arg("json_text"), py::arg("taxonomy"));
    m.def("rules_to_json", &rules_to_json, py::arg("decision_list"));

    py::class_<MatchSpan>(m, "MatchSpan")
        .def_readonly("sentence_index", &MatchSpan::sentence_index)
        .def_readonly("start", &MatchSpan::start)
        .def_readonly("end", &MatchSpan::end)
        .def_readonly("rule_id", &MatchSpan::rule_id)
        .def_readonly("pattern_literal", &MatchSpan::pattern_literal);

    py::class_<DocumentLabels>(m, "DocumentLabels")
        .def_readonly("record_id", &DocumentLabels::record_id)
        .def_readonly("evidence", &DocumentLabels::evidence)
        .def("labels", &DocumentLabels::labels)
        .def("__repr__", [](const DocumentLabels& d) {
            return "<DocumentLabels '" + d.record_id + "' labels=" +
                   std::to_string(d.evidence.size()) + ">";
        });

    py::class_<CorpusDocument>(m, "CorpusDocument")
        .def(py::init([](std::string record_id, std::vector<SentenceContext> sentences) {
                 CorpusDocument doc;
                 doc.record_id = std::move(record_id);
                 doc.sentences = std::move(sentences);
                 return doc;
             }),
             py::arg("record_id"), py::arg("sentences"))
        .def_readwrite("record_id", &CorpusDocument::record_id)
        .def_readwrite("sentences", &CorpusDocument::sentences);

    m.def("match_rule", &match_rule, py::arg("rule"), py::arg("sentence"));
    m.def("apply_decision_list", &apply_decision_list, py::arg("decision_list"),
          py::arg("sentences"), py::arg("record_id") = std::string());
    m.def("label_corpus", &label_corpus, py::arg("documents"), py::arg("decision_list"),
          py::arg("parallelism") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("labels_to_jsonl", &labels_to_jsonl, py::arg("labels"));
    m.def("labels_from_jsonl", &labels_from_jsonl, py::arg("text"));

    py::class_<DataMapping>(m, "DataMapping")
        .def_readonly("leaf_counts", &DataMapping::leaf_counts)
        .def_readonly("rolled_counts", &DataMapping::rolled_counts)
        .def_readonly("corpus_size", &DataMapping::corpus_size)
        .def_readonly("unlabeled_count", &DataMapping::unlabeled_count)
        .def_readonly("taxonomy", &DataMapping::taxonomy)
        .def_property_readonly("counting_mode",
                               [](const DataMapping& mapping) {
                                   return to_string(mapping.counting_mode);
                               })
        .def("to_json", [](const DataMapping& mapping) { return mapping_to_json(mapping); });

    m.def(
        "aggregate",
        [](const std::vector<DocumentLabels>& labels, const TaxonomyNode& taxonomy,
           const std::string& mode) {
            return aggregate(labels, taxonomy, counting_mode_from_string(mode));
        },
        py::arg("labels"), py::arg("taxonomy"), py::arg("mode") = "document-frequency");
    m.def("mapping_from_json", &mapping_from_json, py::arg("json_text"));

    py::class_<ProportionRow>(m, "ProportionRow")
        .def_readonly("path", &ProportionRow::path)
        .def_readonly("count", &ProportionRow::count)
        .def_readonly("percent", &ProportionRow::percent);

    py::class_<ProportionTable>(m, "ProportionTable")
        .def_readonly("node", &ProportionTable::node)
        .def_readonly("total", &ProportionTable::total)
        .def_readonly("zero_total", &ProportionTable::zero_total)
        .def_readonly("rows", &ProportionTable::rows);

    m.def("proportions", &proportions, py::arg("mapping"), py::arg("node_path"));
    m.def("format_percent", &format_percent, py::arg("percent"));

    py::class_<SunburstOptions>(m, "SunburstOptions")
        .def(py::init<>())
        .def_readwrite("palette", &SunburstOptions::palette)
        .def_readwrite("inner_radius", &SunburstOptions::inner_radius)
        .def_readwrite("ring_width", &SunburstOptions::ring_width)
        .def_readwrite("label_min_angle", &SunburstOptions::label_min_angle);

    py::class_<SunburstSpec>(m, "SunburstSpec")
        .def_readonly("empty", &SunburstSpec::empty)
        .def_readonly("palette", &SunburstSpec::palette)
        .def_readonly("inner_radius", &SunburstSpec::inner_radius)
        .def_readonly("ring_width", &SunburstSpec::ring_width)
        .def_readonly("label_min_angle", &SunburstSpec::label_min_angle);

    m.def("build_sunburst", &build_sunburst, py::arg("mapping"),
          py::arg("options") = SunburstOptions{});
    m.def("sunburst_to_json", &sunburst_to_json, py::arg("spec"));
    m.def("emit_sunburst_json", &emit_sunburst_json, py::arg("mapping"),
          py::arg("options") = SunburstOptions{});
    m.def("emit_sunburst_svg", &emit_sunburst_svg, py::arg("spec"));
    m.def("emit_table", &emit_table, py::arg("mapping"));
    m.def("emit_document_table", &emit_document_table, py::arg("labels"));

    py::class_<ConverterConfig>(m, "ConverterConfig")
        .def(py::init<>())
        .def_readwrite("rasterize_template", &ConverterConfig::rasterize_template)
        .def_readwrite("ocr_template", &ConverterConfig::ocr_template)
        .def_readwrite("dpi", &ConverterConfig::dpi)
        .def_readwrite("timeout_secs", &ConverterConfig::timeout_secs)
        .def("validate", &ConverterConfig::validate)
        .def("digest", &ConverterConfig::digest);

    py::enum_<FileKind>(m, "FileKind")
        .value("pdf", FileKind::pdf)
        .value("plain_text", FileKind::plain_text);

    py::class_<DocumentFile>(m, "DocumentFile")
        .def_readonly("record_id", &DocumentFile::record_id)
        .def_readonly("path", &DocumentFile::path)
        .def_readonly("kind", &DocumentFile::kind)
        .def_readonly("content_hash", &DocumentFile::content_hash);

    m.def("resolve_document", &resolve_document, py::arg("record_id"), py::arg("store_dir"));

    py::class_<TextConverter>(m, "TextConverter")
        .def(py::init<ConverterConfig, std::filesystem::path>(), py::arg("config"),
             py::arg("cache_dir"))
        .def("convert", &TextConverter::convert, py::arg("file"),
             py::call_guard<py::gil_scoped_release>())
        .def_property_readonly("rasterize_invocations", &TextConverter::rasterize_invocations)
        .def_property_readonly("ocr_invocations", &TextConverter::ocr_invocations)
        .def_property_readonly("external_invocations", &TextConverter::external_invocations);

    m.def(
        "run_pipeline",
        [](const std::filesystem::path& config_file) {
            RunManifest manifest;
            {
                py::gil_scoped_release release;
                RunConfig config = RunConfig::from_file(config_file);
                manifest = run_pipeline(config);
            }
            return json_to_py(nlohmann::json::parse(manifest.to_json()));
        },
        py::arg("config_file"),
        "Run filter -> ingest -> label -> map -> report for a JSON config; "
        "returns the run manifest.");
}
