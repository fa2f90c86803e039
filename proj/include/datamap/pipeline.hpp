#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "datamap/corpus.hpp"
#include "datamap/engine.hpp"
#include "datamap/ingest.hpp"
#include "datamap/mapping.hpp"
#include "datamap/report.hpp"
#include "datamap/textproc.hpp"

namespace datamap {

std::string tool_version();

// Artifact file names inside out_dir. Subcommands and `run` share these so
// a stage-by-stage run equals the end-to-end one byte for byte.
inline constexpr const char* kFilterReportFile = "filter_report.json";
inline constexpr const char* kTextsFile = "texts.jsonl";
inline constexpr const char* kQuarantineFile = "quarantine.json";
inline constexpr const char* kLabelsFile = "labels.jsonl";
inline constexpr const char* kMappingJsonFile = "mapping.json";
inline constexpr const char* kMappingCsvFile = "mapping.csv";
inline constexpr const char* kDocumentsCsvFile = "documents.csv";
inline constexpr const char* kSunburstJsonFile = "sunburst.json";
inline constexpr const char* kSunburstSvgFile = "sunburst.svg";
inline constexpr const char* kManifestFile = "manifest.json";

struct RunConfig {
    std::filesystem::path records_file;
    SelectionCriteria criteria = SelectionCriteria::sdg_defaults();
    std::filesystem::path store_dir;
    std::filesystem::path cache_dir;
    std::filesystem::path out_dir;
    ConverterConfig converter;
    std::filesystem::path taxonomy_file;
    std::filesystem::path rules_file;
    std::vector<std::string> trigger_lexicon = default_trigger_lexicon();
    CountingMode counting_mode = CountingMode::document_frequency;
    unsigned parallelism = 1;
    SunburstOptions sunburst;

    // Reads a JSON config; relative paths resolve against the config file's
    // directory.
    static RunConfig from_file(const std::filesystem::path& file);
    static RunConfig from_json(const nlohmann::json& j,
                               const std::filesystem::path& base_dir = {});

    // Input files must exist, templates must be valid, out_dir creatable.
    // Throws ConfigError.
    void validate() const;

    // Digest of the analysis configuration: criteria, converter output
    // fields, taxonomy and rules file contents, lexicon and counting mode.
    // Paths, parallelism and timeouts do not affect it.
    std::string analysis_digest() const;
};

struct QuarantineEntry {
    std::string record_id;
    std::string reason;
};

struct RunManifest {
    std::string config_digest;
    std::string version;
    std::map<std::string, std::uint64_t> stage_counts;
    std::vector<QuarantineEntry> quarantined;
    std::map<std::string, double> timings_ms;
    std::map<std::string, std::string> output_digests;

    std::string to_json() const;
};

struct IngestResult {
    // (record_id, raw text) for each successfully converted document, in
    // input order.
    std::vector<std::pair<std::string, std::string>> texts;
    std::vector<QuarantineEntry> quarantined;
    std::uint64_t external_invocations = 0;
};

// Stage functions shared by `run` and the individual subcommands.
FilterReport stage_filter(const RunConfig& config);
IngestResult stage_ingest(const RunConfig& config, const std::vector<std::string>& retained_ids);
std::vector<DocumentLabels> stage_label(const RunConfig& config,
                                        const std::vector<std::pair<std::string, std::string>>& texts,
                                        const DecisionList& dlist);

std::string quarantine_to_json(const std::vector<QuarantineEntry>& entries);
std::string texts_to_jsonl(const std::vector<std::pair<std::string, std::string>>& texts);
std::vector<std::pair<std::string, std::string>> texts_from_jsonl(const std::string& text);

// filter -> ingest -> label -> map -> report. Writes every artifact and the
// run manifest into out_dir. Conversion failures quarantine the document;
// fatal errors throw (ConfigError before any processing, StageError when a
// stage cannot proceed, e.g. zero retained documents).
RunManifest run_pipeline(const RunConfig& config);

}  // namespace datamap
