#include "datamap/ingest.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <iostream>
#include <utility>
#include <vector>

#include "datamap/errors.hpp"
#include "datamap/hash.hpp"
#include "datamap/subprocess.hpp"
#include "datamap/unicode.hpp"

namespace datamap {

namespace {

std::string substitute(std::string templ,
                       const std::vector<std::pair<std::string, std::string>>& vars) {
    for (const auto& [key, value] : vars) {
        std::string placeholder = "{" + key + "}";
        std::size_t pos = 0;
        while ((pos = templ.find(placeholder, pos)) != std::string::npos) {
            templ.replace(pos, placeholder.size(), value);
            pos += value.size();
        }
    }
    return templ;
}

// Error messages name the template rather than the substituted command: the
// substitution contains per-run scratch paths, and quarantine reasons must
// be stable across reruns.
void run_tool(const std::string& what, const std::string& command,
              const std::string& display, double timeout_secs) {
    CommandResult result = run_command(command, timeout_secs);
    if (result.timed_out) {
        throw ConversionError(what + " timed out after " + std::to_string(timeout_secs) +
                                  "s: " + display,
                              result.stderr_output);
    }
    if (result.exit_code != 0) {
        throw ConversionError(what + " exited with status " +
                                  std::to_string(result.exit_code) + ": " + display,
                              result.stderr_output);
    }
}

}  // namespace

void ConverterConfig::validate() const {
    auto require = [](const std::string& templ, const char* name, const char* placeholder) {
        if (templ.find(placeholder) == std::string::npos) {
            throw ConfigError(std::string(name) + " template is missing the " + placeholder +
                              " placeholder");
        }
    };
    require(rasterize_template, "rasterize", "{input}");
    require(rasterize_template, "rasterize", "{outdir}");
    require(ocr_template, "ocr", "{image}");
    require(ocr_template, "ocr", "{output}");
    if (dpi <= 0) {
        throw ConfigError("dpi must be positive");
    }
    if (timeout_secs <= 0) {
        throw ConfigError("timeout_secs must be positive");
    }
}

std::string ConverterConfig::digest() const {
    return datamap::digest(rasterize_template + "\x1f" + ocr_template + "\x1f" +
                           std::to_string(dpi));
}

DocumentFile resolve_document(const std::string& record_id,
                              const std::filesystem::path& store_dir) {
    DocumentFile file;
    file.record_id = record_id;

    std::filesystem::path txt = store_dir / (record_id + ".txt");
    std::filesystem::path pdf = store_dir / (record_id + ".pdf");
    if (std::filesystem::exists(txt)) {
        file.path = txt;
        file.kind = FileKind::plain_text;
    } else if (std::filesystem::exists(pdf)) {
        file.path = pdf;
        file.kind = FileKind::pdf;
    } else {
        throw MissingDocumentError(record_id);
    }
    file.content_hash = digest_file(file.path);
    return file;
}

TextConverter::TextConverter(ConverterConfig config, std::filesystem::path cache_dir)
    : config_(std::move(config)), cache_dir_(std::move(cache_dir)) {
    config_.validate();
    config_digest_ = config_.digest();
    std::filesystem::create_directories(cache_dir_);
}

std::string TextConverter::convert(const DocumentFile& file) {
    if (file.kind == FileKind::plain_text) {
        return utf8_sanitize(read_file(file.path));
    }
    return convert_pdf(file);
}

std::string TextConverter::convert_pdf(const DocumentFile& file) {
    std::filesystem::path cached =
        cache_dir_ / (file.content_hash + "-" + config_digest_ + ".txt");
    if (std::filesystem::exists(cached)) {
        return read_file(cached);
    }

    // Scratch directory for page images; unique per process+call.
    static std::atomic<unsigned long long> scratch_counter{0};
    std::filesystem::path scratch =
        cache_dir_ / ("scratch-" + std::to_string(::getpid()) + "-" +
                      std::to_string(scratch_counter.fetch_add(1)));
    std::filesystem::create_directories(scratch);
    struct ScratchGuard {
        std::filesystem::path dir;
        ~ScratchGuard() {
            std::error_code ec;
            std::filesystem::remove_all(dir, ec);
        }
    } guard{scratch};

    std::string rasterize = substitute(config_.rasterize_template,
                                       {{"input", shell_quote(file.path.string())},
                                        {"outdir", shell_quote(scratch.string())},
                                        {"dpi", std::to_string(config_.dpi)}});
    rasterize_invocations_.fetch_add(1);
    run_tool("rasterizer", rasterize, config_.rasterize_template, config_.timeout_secs);

    // Lexicographic image order is page order (rasterizers zero-pad).
    std::vector<std::filesystem::path> images;
    for (const auto& entry : std::filesystem::directory_iterator(scratch)) {
        if (entry.is_regular_file()) {
            images.push_back(entry.path());
        }
    }
    std::sort(images.begin(), images.end());
    if (images.empty()) {
        throw ConversionError("rasterizer produced no page images for " + file.path.string(),
                              "");
    }

    std::string text;
    bool first = true;
    for (const auto& image : images) {
        std::filesystem::path page_txt = image;
        page_txt += ".ocr.txt";
        std::string ocr = substitute(config_.ocr_template,
                                     {{"image", shell_quote(image.string())},
                                      {"output", shell_quote(page_txt.string())}});
        ocr_invocations_.fetch_add(1);
        run_tool("ocr", ocr, config_.ocr_template, config_.timeout_secs);
        if (!first) {
            text.push_back('\f');
        }
        first = false;
        text += read_file(page_txt);
    }
    text = utf8_sanitize(text);

    try {
        write_file_atomic(cached, text);
    } catch (const Error& e) {
        std::cerr << "warning: cache write failed: " << e.what() << "\n";
    }
    return text;
}

}  // namespace datamap
