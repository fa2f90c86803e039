#include <doctest.h>

#include <thread>

#include "datamap/errors.hpp"
#include "datamap/hash.hpp"
#include "datamap/ingest.hpp"
#include "datamap/subprocess.hpp"
#include "support/helpers.hpp"

using namespace datamap;
using namespace datamap::testing;

namespace {

ConverterConfig stub_config(const TempDir& tools) {
    ConverterConfig config;
    config.rasterize_template = stub_rasterize_cmd(tools.path());
    config.ocr_template = stub_ocr_cmd(tools.path());
    config.dpi = 72;
    config.timeout_secs = 20;
    return config;
}

}  // namespace

TEST_SUITE("ingest") {

TEST_CASE("plain text is preferred over pdf") {
    TempDir store;
    write_text(store / "doc1.txt", "hello data");
    write_text(store / "doc1.pdf", "%PDF-1.4 ...");
    DocumentFile file = resolve_document("doc1", store.path());
    CHECK(file.kind == FileKind::plain_text);
    CHECK(file.record_id == "doc1");
    CHECK(file.content_hash == digest("hello data"));
}

TEST_CASE("pdf is found when no text file exists") {
    TempDir store;
    write_text(store / "doc2.pdf", "%PDF-1.4 ...");
    CHECK(resolve_document("doc2", store.path()).kind == FileKind::pdf);
}

TEST_CASE("missing documents raise an error carrying the record id") {
    TempDir store;
    try {
        resolve_document("doc3", store.path());
        FAIL("expected MissingDocumentError");
    } catch (const MissingDocumentError& e) {
        CHECK(e.record_id() == "doc3");
    }
}

TEST_CASE("content hashes are stable for identical bytes") {
    TempDir store;
    write_text(store / "a.txt", "same bytes");
    write_text(store / "b.txt", "same bytes");
    CHECK(resolve_document("a", store.path()).content_hash ==
          resolve_document("b", store.path()).content_hash);
}

TEST_CASE("plain-text passthrough is byte-exact") {
    TempDir store;
    TempDir cache;
    TempDir tools;
    write_stub_tools(tools.path());
    std::string content = "hello data\nsecond line\t tabs kept \xC3\xA9";
    write_text(store / "p.txt", content);

    TextConverter converter(stub_config(tools), cache.path());
    CHECK(converter.convert(resolve_document("p", store.path())) == content);
    CHECK(converter.external_invocations() == 0);
}

TEST_CASE("invalid utf-8 is replaced during ingest") {
    TempDir store;
    TempDir cache;
    TempDir tools;
    write_stub_tools(tools.path());
    write_text(store / "p.txt", std::string("ok\xFF\xFEok"));
    TextConverter converter(stub_config(tools), cache.path());
    CHECK(converter.convert(resolve_document("p", store.path())) ==
          "ok\xEF\xBF\xBD\xEF\xBF\xBDok");
}

TEST_CASE("two-page pdf converts page by page and caches") {
    TempDir store;
    TempDir cache;
    TempDir tools;
    write_stub_tools(tools.path());
    write_text(store / "d.pdf", two_page_pdf());

    TextConverter converter(stub_config(tools), cache.path());
    DocumentFile file = resolve_document("d", store.path());
    std::string text = converter.convert(file);

    CHECK(text == "page 1 of d.pdf\fpage 2 of d.pdf");
    CHECK(converter.rasterize_invocations() == 1);
    CHECK(converter.ocr_invocations() == 2);

    // The documented cache layout exists on disk.
    std::filesystem::path cached =
        cache.path() / (file.content_hash + "-" + converter.config().digest() + ".txt");
    CHECK(std::filesystem::exists(cached));

    // Second conversion: same bytes, zero external commands.
    std::string again = converter.convert(file);
    CHECK(again == text);
    CHECK(converter.external_invocations() == 3);
}

TEST_CASE("a fresh converter with the same cache also skips the tools") {
    TempDir store;
    TempDir cache;
    TempDir tools;
    write_stub_tools(tools.path());
    write_text(store / "d.pdf", two_page_pdf());

    {
        TextConverter first(stub_config(tools), cache.path());
        first.convert(resolve_document("d", store.path()));
    }
    TextConverter second(stub_config(tools), cache.path());
    CHECK(second.convert(resolve_document("d", store.path())) ==
          "page 1 of d.pdf\fpage 2 of d.pdf");
    CHECK(second.external_invocations() == 0);
}

TEST_CASE("changing the converter config misses the cache") {
    TempDir store;
    TempDir cache;
    TempDir tools;
    write_stub_tools(tools.path());
    write_text(store / "d.pdf", two_page_pdf());

    TextConverter first(stub_config(tools), cache.path());
    first.convert(resolve_document("d", store.path()));

    ConverterConfig changed = stub_config(tools);
    changed.dpi = 300;
    TextConverter second(changed, cache.path());
    second.convert(resolve_document("d", store.path()));
    CHECK(second.rasterize_invocations() == 1);
}

TEST_CASE("failing commands surface captured stderr") {
    TempDir store;
    TempDir cache;
    write_text(store / "d.pdf", two_page_pdf());

    ConverterConfig config;
    config.rasterize_template = "echo boom-diagnostic >&2; false # {input} {outdir}";
    config.ocr_template = "true # {image} {output}";
    config.timeout_secs = 10;

    TextConverter converter(config, cache.path());
    try {
        converter.convert(resolve_document("d", store.path()));
        FAIL("expected ConversionError");
    } catch (const ConversionError& e) {
        CHECK(e.stderr_output().find("boom-diagnostic") != std::string::npos);
    }
}

TEST_CASE("slow commands time out") {
    TempDir store;
    TempDir cache;
    write_text(store / "d.pdf", two_page_pdf());

    ConverterConfig config;
    config.rasterize_template = "sleep 30 # {input} {outdir}";
    config.ocr_template = "true # {image} {output}";
    config.timeout_secs = 0.2;

    TextConverter converter(config, cache.path());
    try {
        converter.convert(resolve_document("d", store.path()));
        FAIL("expected ConversionError");
    } catch (const ConversionError& e) {
        CHECK(std::string(e.what()).find("timed out") != std::string::npos);
    }
}

TEST_CASE("templates must carry their placeholders") {
    ConverterConfig config;
    config.rasterize_template = "pdftoppm -png {input}";  // no {outdir}
    CHECK_THROWS_AS(config.validate(), ConfigError);

    ConverterConfig config2;
    config2.ocr_template = "tesseract {image} out";  // no {output}
    CHECK_THROWS_AS(config2.validate(), ConfigError);

    ConverterConfig config3;
    config3.dpi = 0;
    CHECK_THROWS_AS(config3.validate(), ConfigError);
}

TEST_CASE("concurrent conversions of one pdf agree") {
    TempDir store;
    TempDir cache;
    TempDir tools;
    write_stub_tools(tools.path());
    write_text(store / "d.pdf", two_page_pdf());

    TextConverter converter(stub_config(tools), cache.path());
    DocumentFile file = resolve_document("d", store.path());

    std::vector<std::string> results(8);
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < results.size(); ++i) {
        threads.emplace_back([&, i] { results[i] = converter.convert(file); });
    }
    for (auto& t : threads) {
        t.join();
    }
    for (const auto& r : results) {
        CHECK(r == "page 1 of d.pdf\fpage 2 of d.pdf");
    }
}

TEST_CASE("command runner reports exit codes and stderr") {
    CommandResult ok = run_command("exit 0", 5);
    CHECK(ok.exit_code == 0);
    CHECK_FALSE(ok.timed_out);

    CommandResult fail = run_command("echo oops >&2; exit 3", 5);
    CHECK(fail.exit_code == 3);
    CHECK(fail.stderr_output.find("oops") != std::string::npos);

    CommandResult slow = run_command("sleep 10", 0.1);
    CHECK(slow.timed_out);
}

TEST_CASE("shell quoting survives awkward paths") {
    TempDir dir;
    std::filesystem::path weird = dir / "a b'c.txt";
    write_text(weird, "x");
    CommandResult result = run_command("cat " + shell_quote(weird.string()), 5);
    CHECK(result.exit_code == 0);
}

}  // TEST_SUITE
