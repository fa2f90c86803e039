#include "datamap/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <thread>

#include <json.hpp>

#include "datamap/errors.hpp"
#include "datamap/hash.hpp"

#ifndef DATAMAP_VERSION
#define DATAMAP_VERSION "0.0.0"
#endif

namespace datamap {

using nlohmann::json;

std::string tool_version() {
    return DATAMAP_VERSION;
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::filesystem::path& p) {
    if (p.empty() || p.is_absolute() || base.empty()) {
        return p;
    }
    return base / p;
}

template <typename Fn>
void parallel_for(std::size_t n, unsigned parallelism, Fn&& fn) {
    unsigned workers = std::max(1u, parallelism);
    workers = std::min<unsigned>(workers, n == 0 ? 1u : static_cast<unsigned>(n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) {
                    return;
                }
                fn(i);
            }
        });
    }
    for (auto& t : threads) {
        t.join();
    }
}

class StageTimer {
public:
    explicit StageTimer(std::map<std::string, double>& sink) : sink_(sink) {}

    template <typename Fn>
    auto time(const std::string& name, Fn&& fn) -> decltype(fn()) {
        auto start = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            record(name, start);
        } else {
            auto result = fn();
            record(name, start);
            return result;
        }
    }

private:
    void record(const std::string& name,
                std::chrono::steady_clock::time_point start) {
        auto elapsed = std::chrono::steady_clock::now() - start;
        sink_[name] =
            std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed)
                .count();
    }

    std::map<std::string, double>& sink_;
};

}  // namespace

RunConfig RunConfig::from_file(const std::filesystem::path& file) {
    json j;
    try {
        j = json::parse(read_file(file));
    } catch (const Error& e) {
        throw ConfigError(e.what());
    } catch (const json::exception& e) {
        throw ConfigError("config file " + file.string() + " is not valid JSON: " + e.what());
    }
    return from_json(j, file.parent_path());
}

RunConfig RunConfig::from_json(const json& j, const std::filesystem::path& base_dir) {
    RunConfig config;
    try {
        config.records_file = resolve(base_dir, j.value("records_file", ""));
        config.store_dir = resolve(base_dir, j.value("store_dir", ""));
        config.cache_dir = resolve(base_dir, j.value("cache_dir", ""));
        config.out_dir = resolve(base_dir, j.value("out_dir", ""));
        config.taxonomy_file = resolve(base_dir, j.value("taxonomy_file", ""));
        config.rules_file = resolve(base_dir, j.value("rules_file", ""));
        if (j.contains("criteria")) {
            config.criteria = SelectionCriteria::from_json(j.at("criteria"));
        }
        if (j.contains("converter")) {
            const json& c = j.at("converter");
            config.converter.rasterize_template =
                c.value("rasterize_cmd", config.converter.rasterize_template);
            config.converter.ocr_template = c.value("ocr_cmd", config.converter.ocr_template);
            config.converter.dpi = c.value("dpi", config.converter.dpi);
            config.converter.timeout_secs =
                c.value("timeout_secs", config.converter.timeout_secs);
        }
        if (j.contains("trigger_lexicon")) {
            config.trigger_lexicon =
                j.at("trigger_lexicon").get<std::vector<std::string>>();
        }
        if (j.contains("counting_mode")) {
            config.counting_mode =
                counting_mode_from_string(j.at("counting_mode").get<std::string>());
        }
        config.parallelism = j.value("parallelism", 1u);
        if (j.contains("report")) {
            const json& r = j.at("report");
            config.sunburst.label_min_angle =
                r.value("label_min_angle", config.sunburst.label_min_angle);
            config.sunburst.inner_radius =
                r.value("inner_radius", config.sunburst.inner_radius);
            config.sunburst.ring_width = r.value("ring_width", config.sunburst.ring_width);
            if (r.contains("palette")) {
                config.sunburst.palette = r.at("palette").get<std::vector<std::string>>();
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    return config;
}

void RunConfig::validate() const {
    auto require_file = [](const std::filesystem::path& p, const char* what) {
        if (p.empty()) {
            throw ConfigError(std::string(what) + " is not set");
        }
        if (!std::filesystem::exists(p) || std::filesystem::is_directory(p)) {
            throw ConfigError(std::string(what) + " not found: " + p.string());
        }
    };
    require_file(records_file, "records_file");
    require_file(taxonomy_file, "taxonomy_file");
    require_file(rules_file, "rules_file");
    if (store_dir.empty() || !std::filesystem::is_directory(store_dir)) {
        throw ConfigError("store_dir not found: " + store_dir.string());
    }
    if (out_dir.empty()) {
        throw ConfigError("out_dir is not set");
    }
    if (cache_dir.empty()) {
        throw ConfigError("cache_dir is not set");
    }
    if (parallelism < 1) {
        throw ConfigError("parallelism must be >= 1");
    }
    if (trigger_lexicon.empty()) {
        throw ConfigError("trigger_lexicon must not be empty");
    }
    converter.validate();
}

std::string RunConfig::analysis_digest() const {
    json j;
    j["criteria"] = criteria.to_json();
    j["converter"] = {{"rasterize_cmd", converter.rasterize_template},
                      {"ocr_cmd", converter.ocr_template},
                      {"dpi", converter.dpi}};
    j["taxonomy"] = digest_file(taxonomy_file);
    j["rules"] = digest_file(rules_file);
    j["trigger_lexicon"] = trigger_lexicon;
    j["counting_mode"] = to_string(counting_mode);
    return digest(j.dump());
}

std::string RunManifest::to_json() const {
    json j;
    j["config_digest"] = config_digest;
    j["version"] = version;
    j["stage_counts"] = stage_counts;
    j["quarantined"] = json::array();
    for (const auto& q : quarantined) {
        j["quarantined"].push_back({{"record_id", q.record_id}, {"reason", q.reason}});
    }
    j["timings_ms"] = timings_ms;
    j["output_digests"] = output_digests;
    return j.dump(2) + "\n";
}

FilterReport stage_filter(const RunConfig& config) {
    std::vector<DocumentRecord> records = parse_records(config.records_file);
    return apply_criteria(records, config.criteria);
}

IngestResult stage_ingest(const RunConfig& config, const std::vector<std::string>& retained_ids) {
    IngestResult result;
    TextConverter converter(config.converter, config.cache_dir);

    struct Slot {
        bool ok = false;
        std::string text;
        std::string reason;
    };
    std::vector<Slot> slots(retained_ids.size());

    parallel_for(retained_ids.size(), config.parallelism, [&](std::size_t i) {
        try {
            DocumentFile file = resolve_document(retained_ids[i], config.store_dir);
            slots[i].text = converter.convert(file);
            slots[i].ok = true;
        } catch (const Error& e) {
            slots[i].reason = e.what();
        }
    });

    for (std::size_t i = 0; i < retained_ids.size(); ++i) {
        if (slots[i].ok) {
            result.texts.emplace_back(retained_ids[i], std::move(slots[i].text));
        } else {
            result.quarantined.push_back({retained_ids[i], slots[i].reason});
        }
    }
    result.external_invocations = converter.external_invocations();
    return result;
}

std::vector<DocumentLabels> stage_label(
    const RunConfig& config, const std::vector<std::pair<std::string, std::string>>& texts,
    const DecisionList& dlist) {
    std::vector<CorpusDocument> documents(texts.size());
    parallel_for(texts.size(), config.parallelism, [&](std::size_t i) {
        const auto& [record_id, raw] = texts[i];
        CleanText clean = clean_text(raw, record_id);
        documents[i].record_id = record_id;
        documents[i].sentences =
            detect_data_sentences(segment_sentences(clean), config.trigger_lexicon);
    });
    return label_corpus(documents, dlist, config.parallelism);
}

std::string quarantine_to_json(const std::vector<QuarantineEntry>& entries) {
    json j = json::array();
    for (const auto& q : entries) {
        j.push_back({{"record_id", q.record_id}, {"reason", q.reason}});
    }
    return j.dump(2) + "\n";
}

std::string texts_to_jsonl(const std::vector<std::pair<std::string, std::string>>& texts) {
    std::string out;
    for (const auto& [record_id, text] : texts) {
        json j;
        j["record_id"] = record_id;
        j["text"] = text;
        out += j.dump();
        out.push_back('\n');
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> texts_from_jsonl(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) {
            end = text.size();
        }
        std::string line = text.substr(start, end - start);
        start = end + 1;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw Error(std::string("bad texts line: ") + e.what());
        }
        out.emplace_back(j.value("record_id", ""), j.value("text", ""));
    }
    return out;
}

RunManifest run_pipeline(const RunConfig& config) {
    config.validate();

    // Taxonomy and rules are configuration; load them before touching any
    // document so config errors surface before processing starts.
    TaxonomyNode taxonomy = parse_taxonomy(config.taxonomy_file);
    DecisionList dlist = parse_rules(config.rules_file, taxonomy);

    std::filesystem::create_directories(config.out_dir);
    std::filesystem::create_directories(config.cache_dir);

    RunManifest manifest;
    manifest.version = tool_version();
    manifest.config_digest = config.analysis_digest();
    StageTimer timer(manifest.timings_ms);
    auto total_start = std::chrono::steady_clock::now();

    auto write_artifact = [&](const char* name, const std::string& bytes) {
        write_file_atomic(config.out_dir / name, bytes);
        manifest.output_digests[name] = digest(bytes);
    };

    std::vector<DocumentRecord> records =
        timer.time("parse", [&] { return parse_records(config.records_file); });
    FilterReport report =
        timer.time("filter", [&] { return apply_criteria(records, config.criteria); });
    write_artifact(kFilterReportFile, report.to_json().dump(2) + "\n");
    manifest.stage_counts["records"] = records.size();
    manifest.stage_counts["retained"] = report.retained.size();
    if (report.retained.empty()) {
        throw StageError("filter", "zero documents retained after applying the criteria");
    }

    IngestResult ingest =
        timer.time("ingest", [&] { return stage_ingest(config, report.retained_ids()); });
    write_artifact(kTextsFile, texts_to_jsonl(ingest.texts));
    write_artifact(kQuarantineFile, quarantine_to_json(ingest.quarantined));
    manifest.quarantined = ingest.quarantined;
    manifest.stage_counts["converted"] = ingest.texts.size();

    std::vector<DocumentLabels> labels =
        timer.time("label", [&] { return stage_label(config, ingest.texts, dlist); });
    write_artifact(kLabelsFile, labels_to_jsonl(labels));
    manifest.stage_counts["labeled"] = labels.size();

    DataMapping mapping = timer.time(
        "map", [&] { return aggregate(labels, taxonomy, config.counting_mode); });
    write_artifact(kMappingJsonFile, mapping_to_json(mapping));
    write_artifact(kMappingCsvFile, emit_table(mapping));
    write_artifact(kDocumentsCsvFile, emit_document_table(labels));

    timer.time("report", [&] {
        SunburstSpec spec = build_sunburst(mapping, config.sunburst);
        write_artifact(kSunburstJsonFile, sunburst_to_json(spec));
        write_artifact(kSunburstSvgFile, emit_sunburst_svg(spec));
    });

    auto total_elapsed = std::chrono::steady_clock::now() - total_start;
    manifest.timings_ms["total"] =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(total_elapsed)
            .count();

    write_file_atomic(config.out_dir / kManifestFile, manifest.to_json());
    return manifest;
}

}  // namespace datamap
