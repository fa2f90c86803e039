#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <string>

namespace datamap {

enum class FileKind { pdf, plain_text };

struct DocumentFile {
    std::string record_id;
    std::filesystem::path path;
    FileKind kind = FileKind::plain_text;
    std::string content_hash;  // hex digest of the file bytes
};

// Command templates for the external PDF-to-image and image-to-text tools.
// rasterize_template must contain {input} and {outdir} (and may use {dpi});
// ocr_template must contain {image} and {output}. The rasterizer must name
// page images so that lexicographic order is page order.
struct ConverterConfig {
    std::string rasterize_template = "pdftoppm -r {dpi} -png {input} {outdir}/page";
    std::string ocr_template = "tesseract {image} stdout > {output}";
    int dpi = 300;
    double timeout_secs = 120.0;

    // Throws ConfigError when a template lacks a required placeholder or a
    // numeric field is out of range.
    void validate() const;

    // Digest over the fields that affect conversion output (templates and
    // dpi; the timeout does not change content).
    std::string digest() const;
};

// Finds <store_dir>/<record_id>.txt or .pdf, plain text preferred since it
// bypasses conversion. Throws MissingDocumentError when neither exists.
DocumentFile resolve_document(const std::string& record_id,
                              const std::filesystem::path& store_dir);

// PDF-to-text adapter with a content-addressed cache. Plain-text files pass
// through verbatim (UTF-8 sanitized); PDFs are rasterized page by page,
// OCR'd, and the page texts concatenated with form-feed separators. Cached
// results live at <cache_dir>/<content_hash>-<cfg_digest>.txt and are
// written atomically, so concurrent workers never observe partial files.
class TextConverter {
public:
    TextConverter(ConverterConfig config, std::filesystem::path cache_dir);

    // Raw text for the document. Throws ConversionError (carrying captured
    // stderr) when an external command fails or times out. A cache write
    // failure logs a warning; the result is still returned.
    std::string convert(const DocumentFile& file);

    std::uint64_t rasterize_invocations() const { return rasterize_invocations_.load(); }
    std::uint64_t ocr_invocations() const { return ocr_invocations_.load(); }
    std::uint64_t external_invocations() const {
        return rasterize_invocations() + ocr_invocations();
    }

    const ConverterConfig& config() const { return config_; }

private:
    std::string convert_pdf(const DocumentFile& file);

    ConverterConfig config_;
    std::string config_digest_;
    std::filesystem::path cache_dir_;
    std::atomic<std::uint64_t> rasterize_invocations_{0};
    std::atomic<std::uint64_t> ocr_invocations_{0};
};

}  // namespace datamap
