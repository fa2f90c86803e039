#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>

namespace datamap::testing {

inline std::filesystem::path fixture_dir() {
    return DATAMAP_FIXTURE_DIR;
}

inline std::filesystem::path asset_dir() {
    return DATAMAP_ASSET_DIR;
}

class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("datamap-test-" + std::to_string(::getpid()) + "-" +
                 std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Minimal two-page PDF; each page object carries the exact token
// "/Type /Page " so a stub rasterizer can count pages with grep.
inline std::string two_page_pdf() {
    return "%PDF-1.4\n"
           "1 0 obj << /Type /Catalog /Pages 2 0 R >> endobj\n"
           "2 0 obj << /Type /Pages /Kids [3 0 R 4 0 R] /Count 2 >> endobj\n"
           "3 0 obj << /Type /Page /Parent 2 0 R /MediaBox [0 0 612 792] >> endobj\n"
           "4 0 obj << /Type /Page /Parent 2 0 R /MediaBox [0 0 612 792] >> endobj\n"
           "trailer << /Root 1 0 R >>\n"
           "%%EOF\n";
}

// Stub converter scripts. The rasterizer derives one image per "/Type /Page "
// token in the input; the OCR stub copies image bytes to the output file.
inline void write_stub_tools(const std::filesystem::path& dir) {
    write_text(dir / "rasterize.sh",
               "#!/bin/sh\n"
               "in=\"$1\"; out=\"$2\"\n"
               "n=$(grep -c -- '/Type /Page ' \"$in\")\n"
               "i=1\n"
               "while [ \"$i\" -le \"$n\" ]; do\n"
               "  printf 'page %d of %s' \"$i\" \"$(basename \"$in\")\" > \"$out/page-$(printf %03d \"$i\").img\"\n"
               "  i=$((i+1))\n"
               "done\n");
    write_text(dir / "ocr.sh",
               "#!/bin/sh\n"
               "cp \"$1\" \"$2\"\n");
}

inline std::string stub_rasterize_cmd(const std::filesystem::path& dir) {
    return "/bin/sh " + (dir / "rasterize.sh").string() + " {input} {outdir}";
}

inline std::string stub_ocr_cmd(const std::filesystem::path& dir) {
    return "/bin/sh " + (dir / "ocr.sh").string() + " {image} {output}";
}

}  // namespace datamap::testing
