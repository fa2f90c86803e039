#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "datamap/errors.hpp"
#include "datamap/hash.hpp"
#include "datamap/pipeline.hpp"

namespace fs = std::filesystem;
using namespace datamap;

namespace {

struct CliOverrides {
    std::string config_file;
    std::string records_file;
    std::string store_dir;
    std::string cache_dir;
    std::string out_dir;
    std::string taxonomy_file;
    std::string rules_file;
    std::string rasterize_cmd;
    std::string ocr_cmd;
    std::string counting_mode;
    std::string palette_file;
    int dpi = 0;
    double timeout_secs = 0;
    double label_min_angle = -1;
    unsigned parallelism = 0;
};

void add_common_flags(CLI::App* cmd, CliOverrides& o) {
    cmd->add_option("--config", o.config_file, "JSON run configuration");
    cmd->add_option("--out-dir", o.out_dir, "Output directory");
}

RunConfig load_config(const CliOverrides& o) {
    RunConfig config;
    if (!o.config_file.empty()) {
        config = RunConfig::from_file(o.config_file);
    }
    if (!o.records_file.empty()) config.records_file = o.records_file;
    if (!o.store_dir.empty()) config.store_dir = o.store_dir;
    if (!o.cache_dir.empty()) config.cache_dir = o.cache_dir;
    if (!o.out_dir.empty()) config.out_dir = o.out_dir;
    if (!o.taxonomy_file.empty()) config.taxonomy_file = o.taxonomy_file;
    if (!o.rules_file.empty()) config.rules_file = o.rules_file;
    if (!o.rasterize_cmd.empty()) config.converter.rasterize_template = o.rasterize_cmd;
    if (!o.ocr_cmd.empty()) config.converter.ocr_template = o.ocr_cmd;
    if (o.dpi > 0) config.converter.dpi = o.dpi;
    if (o.timeout_secs > 0) config.converter.timeout_secs = o.timeout_secs;
    if (o.parallelism > 0) config.parallelism = o.parallelism;
    if (!o.counting_mode.empty()) {
        config.counting_mode = counting_mode_from_string(o.counting_mode);
    }
    if (o.label_min_angle >= 0) config.sunburst.label_min_angle = o.label_min_angle;
    if (!o.palette_file.empty()) {
        auto j = nlohmann::json::parse(read_file(o.palette_file));
        config.sunburst.palette = j.get<std::vector<std::string>>();
    }
    return config;
}

void require_out_dir(const RunConfig& config) {
    if (config.out_dir.empty()) {
        throw ConfigError("out_dir is not set (use --out-dir or the config file)");
    }
    fs::create_directories(config.out_dir);
}

void require_input(const fs::path& path, const char* what) {
    if (path.empty()) {
        throw ConfigError(std::string(what) + " is not set");
    }
    if (!fs::exists(path)) {
        throw ConfigError(std::string(what) + " not found: " + path.string());
    }
}

std::string read_artifact(const RunConfig& config, const char* name, const char* producer) {
    fs::path path = config.out_dir / name;
    if (!fs::exists(path)) {
        throw StageError(producer,
                         std::string(name) + " not found in " + config.out_dir.string() +
                             "; run `datamap " + producer + "` first");
    }
    return read_file(path);
}

int cmd_filter(const CliOverrides& o) {
    RunConfig config = load_config(o);
    require_input(config.records_file, "records_file");
    require_out_dir(config);
    FilterReport report = stage_filter(config);
    write_file_atomic(config.out_dir / kFilterReportFile, report.to_json().dump(2) + "\n");
    for (const auto& s : report.stages) {
        std::cout << s.criterion << ": " << s.input << " -> " << s.output << " (excluded "
                  << s.excluded << ")\n";
    }
    std::cout << "retained " << report.retained.size() << " of "
              << (report.stages.empty() ? 0 : report.stages.front().input) << " records\n";
    return 0;
}

int cmd_ingest(const CliOverrides& o) {
    RunConfig config = load_config(o);
    require_input(config.store_dir, "store_dir");
    if (config.cache_dir.empty()) {
        throw ConfigError("cache_dir is not set");
    }
    config.converter.validate();
    require_out_dir(config);
    auto report = nlohmann::json::parse(read_artifact(config, kFilterReportFile, "filter"));
    std::vector<std::string> ids = report.at("retained_ids").get<std::vector<std::string>>();
    IngestResult result = stage_ingest(config, ids);
    write_file_atomic(config.out_dir / kTextsFile, texts_to_jsonl(result.texts));
    write_file_atomic(config.out_dir / kQuarantineFile, quarantine_to_json(result.quarantined));
    std::cout << "converted " << result.texts.size() << " documents, quarantined "
              << result.quarantined.size() << "\n";
    return 0;
}

int cmd_label(const CliOverrides& o) {
    RunConfig config = load_config(o);
    require_input(config.taxonomy_file, "taxonomy_file");
    require_input(config.rules_file, "rules_file");
    require_out_dir(config);
    TaxonomyNode taxonomy = parse_taxonomy(config.taxonomy_file);
    DecisionList dlist = parse_rules(config.rules_file, taxonomy);
    auto texts = texts_from_jsonl(read_artifact(config, kTextsFile, "ingest"));
    std::vector<DocumentLabels> labels = stage_label(config, texts, dlist);
    write_file_atomic(config.out_dir / kLabelsFile, labels_to_jsonl(labels));
    std::size_t labeled = 0;
    for (const auto& doc : labels) {
        labeled += doc.evidence.empty() ? 0 : 1;
    }
    std::cout << "labeled " << labeled << " of " << labels.size() << " documents\n";
    return 0;
}

int cmd_map(const CliOverrides& o) {
    RunConfig config = load_config(o);
    require_input(config.taxonomy_file, "taxonomy_file");
    require_out_dir(config);
    TaxonomyNode taxonomy = parse_taxonomy(config.taxonomy_file);
    auto labels = labels_from_jsonl(read_artifact(config, kLabelsFile, "label"));
    DataMapping mapping = aggregate(labels, taxonomy, config.counting_mode);
    write_file_atomic(config.out_dir / kMappingJsonFile, mapping_to_json(mapping));
    write_file_atomic(config.out_dir / kMappingCsvFile, emit_table(mapping));
    write_file_atomic(config.out_dir / kDocumentsCsvFile, emit_document_table(labels));
    ProportionTable top = proportions(mapping, "");
    for (const auto& row : top.rows) {
        std::cout << row.path << ": " << row.count << " (" << format_percent(row.percent)
                  << "%)\n";
    }
    return 0;
}

int cmd_report(const CliOverrides& o, const std::string& format) {
    RunConfig config = load_config(o);
    require_out_dir(config);
    DataMapping mapping = mapping_from_json(read_artifact(config, kMappingJsonFile, "map"));
    SunburstSpec spec = build_sunburst(mapping, config.sunburst);
    if (format == "json" || format == "all") {
        write_file_atomic(config.out_dir / kSunburstJsonFile, sunburst_to_json(spec));
    }
    if (format == "svg" || format == "all") {
        write_file_atomic(config.out_dir / kSunburstSvgFile, emit_sunburst_svg(spec));
    }
    if (format == "csv" || format == "all") {
        write_file_atomic(config.out_dir / kMappingCsvFile, emit_table(mapping));
        auto labels = labels_from_jsonl(read_artifact(config, kLabelsFile, "label"));
        write_file_atomic(config.out_dir / kDocumentsCsvFile, emit_document_table(labels));
    }
    std::cout << "report written to " << config.out_dir.string() << "\n";
    return 0;
}

int cmd_run(const CliOverrides& o) {
    RunConfig config = load_config(o);
    RunManifest manifest = run_pipeline(config);
    std::cout << "records " << manifest.stage_counts.at("records") << ", retained "
              << manifest.stage_counts.at("retained") << ", converted "
              << manifest.stage_counts.at("converted") << ", labeled "
              << manifest.stage_counts.at("labeled") << "\n";
    if (!manifest.quarantined.empty()) {
        std::cout << manifest.quarantined.size() << " documents quarantined (see "
                  << kQuarantineFile << ")\n";
    }
    std::cout << "outputs in " << config.out_dir.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"datamap: discover data sources and data types referenced in a "
                 "research corpus"};
    app.set_version_flag("--version", std::string("datamap ") + tool_version());
    app.require_subcommand(1);

    CliOverrides o;
    std::string format = "all";

    CLI::App* filter = app.add_subcommand("filter", "Apply the selection criteria to a records file");
    add_common_flags(filter, o);
    filter->add_option("--records", o.records_file, "Records CSV file");

    CLI::App* ingest = app.add_subcommand("ingest", "Convert retained documents to text");
    add_common_flags(ingest, o);
    ingest->add_option("--store-dir", o.store_dir, "Directory of <id>.pdf / <id>.txt files");
    ingest->add_option("--cache-dir", o.cache_dir, "Conversion cache directory");
    ingest->add_option("--rasterize-cmd", o.rasterize_cmd, "PDF rasterizer command template");
    ingest->add_option("--ocr-cmd", o.ocr_cmd, "OCR command template");
    ingest->add_option("--dpi", o.dpi, "Rasterization DPI");
    ingest->add_option("--timeout-secs", o.timeout_secs, "External command timeout");
    ingest->add_option("--parallelism", o.parallelism, "Worker threads");

    CLI::App* label = app.add_subcommand("label", "Apply the decision list to converted texts");
    add_common_flags(label, o);
    label->add_option("--taxonomy", o.taxonomy_file, "Taxonomy JSON file");
    label->add_option("--rules", o.rules_file, "Rules JSON file");
    label->add_option("--parallelism", o.parallelism, "Worker threads");

    CLI::App* mapc = app.add_subcommand("map", "Aggregate labels into the data mapping");
    add_common_flags(mapc, o);
    mapc->add_option("--taxonomy", o.taxonomy_file, "Taxonomy JSON file");
    mapc->add_option("--counting-mode", o.counting_mode,
                     "document-frequency or mention-frequency");

    CLI::App* report = app.add_subcommand("report", "Emit tables and sunburst charts");
    add_common_flags(report, o);
    report->add_option("--format", format, "csv, json, svg or all")
        ->check(CLI::IsMember({"csv", "json", "svg", "all"}));
    report->add_option("--label-min-angle", o.label_min_angle,
                       "Suppress labels on arcs below this angle (degrees)");
    report->add_option("--palette", o.palette_file, "JSON array of hex colors");

    CLI::App* run = app.add_subcommand("run", "Run the full pipeline");
    add_common_flags(run, o);
    run->add_option("--records", o.records_file, "Records CSV file");
    run->add_option("--store-dir", o.store_dir, "Document store directory");
    run->add_option("--cache-dir", o.cache_dir, "Conversion cache directory");
    run->add_option("--taxonomy", o.taxonomy_file, "Taxonomy JSON file");
    run->add_option("--rules", o.rules_file, "Rules JSON file");
    run->add_option("--rasterize-cmd", o.rasterize_cmd, "PDF rasterizer command template");
    run->add_option("--ocr-cmd", o.ocr_cmd, "OCR command template");
    run->add_option("--dpi", o.dpi, "Rasterization DPI");
    run->add_option("--timeout-secs", o.timeout_secs, "External command timeout");
    run->add_option("--parallelism", o.parallelism, "Worker threads");
    run->add_option("--counting-mode", o.counting_mode,
                    "document-frequency or mention-frequency");
    run->add_option("--label-min-angle", o.label_min_angle,
                    "Suppress labels on arcs below this angle (degrees)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (filter->parsed()) return cmd_filter(o);
        if (ingest->parsed()) return cmd_ingest(o);
        if (label->parsed()) return cmd_label(o);
        if (mapc->parsed()) return cmd_map(o);
        if (report->parsed()) return cmd_report(o, format);
        if (run->parsed()) return cmd_run(o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
