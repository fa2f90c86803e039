#include <doctest.h>

#include <random>

#include "datamap/textproc.hpp"
#include "datamap/unicode.hpp"
#include "support/helpers.hpp"

using namespace datamap;
using namespace datamap::testing;

namespace {

// Random UTF-8 text over a pool that exercises hyphens, line breaks, form
// feeds, combining marks and multi-byte letters.
std::string random_raw_text(std::mt19937& rng, std::size_t max_len = 120) {
    static const std::vector<std::string> pool = {
        "a", "b", "c", "Z", "9", " ", "  ", "\t", "\n", "\r\n", "\r", "\f", "-", "-\n",
        ".", "!", "?", "é", "é", "ß", "中", "…", " ", "data", "set",
    };
    std::string out;
    std::size_t n = rng() % max_len;
    for (std::size_t i = 0; i < n; ++i) {
        out += pool[rng() % pool.size()];
    }
    return out;
}

std::size_t non_ws_codepoints(const std::string& utf8) {
    std::size_t count = 0;
    for (char32_t cp : utf8_decode(utf8)) {
        if (!is_white_space(cp)) {
            ++count;
        }
    }
    return count;
}

}  // namespace

TEST_SUITE("textproc") {

TEST_CASE("line-break hyphenation is joined") {
    CHECK(clean_text("electri-\ncity data").text == "electricity data");
}

TEST_CASE("carriage returns and space runs collapse") {
    CHECK(clean_text("a  b\r\nc").text == "a b c");
}

TEST_CASE("hyphen before an uppercase continuation is kept") {
    CHECK(clean_text("data-\nDriven methods").text == "data- Driven methods");
}

TEST_CASE("form feeds become single spaces") {
    CHECK(clean_text("one\ftwo").text == "one two");
}

TEST_CASE("combining marks compose to NFC") {
    CHECK(clean_text("café").text == "café");
}

TEST_CASE("cleaning golden files are byte-exact") {
    for (int i = 0; i < 10; ++i) {
        char raw_name[32];
        char expected_name[32];
        std::snprintf(raw_name, sizeof(raw_name), "raw_%02d.txt", i);
        std::snprintf(expected_name, sizeof(expected_name), "expected_%02d.txt", i);
        std::string raw = slurp(fixture_dir() / "cleaning" / raw_name);
        std::string expected = slurp(fixture_dir() / "cleaning" / expected_name);
        CAPTURE(i);
        CHECK(clean_text(raw).text == expected);
    }
}

TEST_CASE("clean_text is idempotent on random input") {
    std::mt19937 rng(97);
    for (int i = 0; i < 300; ++i) {
        std::string raw = random_raw_text(rng);
        std::string once = clean_text(raw).text;
        CHECK(clean_text(once).text == once);
    }
}

TEST_CASE("plain two-sentence text splits in two") {
    auto sentences = segment_sentences(CleanText{"We used data. It was big.", "d"});
    REQUIRE(sentences.size() == 2);
    CHECK(sentences[0].text == "We used data.");
    CHECK(sentences[1].text == "It was big.");
    CHECK(sentences[0].index == 0);
    CHECK(sentences[1].index == 1);
    CHECK(sentences[0].record_id == "d");
}

TEST_CASE("abbreviation guard prevents a split") {
    auto sentences = segment_sentences(CleanText{"See Fig. 3 for data.", ""});
    REQUIRE(sentences.size() == 1);
    CHECK(sentences[0].text == "See Fig. 3 for data.");
}

TEST_CASE("et al. does not end a sentence") {
    auto sentences = segment_sentences(CleanText{"Smith et al. Reported results.", ""});
    CHECK(sentences.size() == 1);
}

TEST_CASE("empty text yields no sentences") {
    CHECK(segment_sentences(CleanText{"", ""}).empty());
}

TEST_CASE("question and exclamation marks split") {
    auto sentences = segment_sentences(CleanText{"Is it data? Yes! We checked.", ""});
    REQUIRE(sentences.size() == 3);
    CHECK(sentences[2].text == "We checked.");
}

TEST_CASE("segmentation conserves text and characters") {
    std::mt19937 rng(131);
    for (int i = 0; i < 150; ++i) {
        CleanText clean = clean_text(random_raw_text(rng, 200));
        auto sentences = segment_sentences(clean);
        std::string joined;
        std::size_t chars = 0;
        for (const auto& s : sentences) {
            if (!joined.empty()) {
                joined += " ";
            }
            joined += s.text;
            chars += non_ws_codepoints(s.text);
            CHECK(s.index == static_cast<std::size_t>(&s - sentences.data()));
        }
        CHECK(joined == clean.text);
        CHECK(chars == non_ws_codepoints(clean.text));
    }
}

TEST_CASE("data sentences are flagged with their trigger") {
    auto sentences = detect_data_sentences(
        segment_sentences(CleanText{
            "The data were collected in 2019. We update the database weekly. "
            "The date was updated.",
            ""}),
        default_trigger_lexicon());
    REQUIRE(sentences.size() == 3);
    CHECK(sentences[0].mentions_data);
    CHECK(sentences[0].trigger == "data");
    CHECK(sentences[1].mentions_data);
    CHECK(sentences[1].trigger == "database");
    CHECK_FALSE(sentences[2].mentions_data);
    CHECK_FALSE(sentences[2].trigger.has_value());
}

TEST_CASE("multi-word lexemes match and win by length") {
    auto sentences = detect_data_sentences(
        {SentenceContext{"", 0, "Three data sets were merged.", false, {}}},
        default_trigger_lexicon());
    CHECK(sentences[0].mentions_data);
    CHECK(sentences[0].trigger == "data sets");
}

TEST_CASE("word boundaries stop substring leakage") {
    auto sentences = detect_data_sentences(
        {SentenceContext{"", 0, "Metadatabase updates happen nightly.", false, {}}},
        default_trigger_lexicon());
    CHECK_FALSE(sentences[0].mentions_data);
}

TEST_CASE("detection is monotone in the lexicon") {
    std::mt19937 rng(151);
    const std::vector<std::string> extra = {"set", "records", "figures", "table"};
    for (int i = 0; i < 100; ++i) {
        CleanText clean = clean_text(random_raw_text(rng, 160));
        auto sentences = segment_sentences(clean);

        std::vector<std::string> small = default_trigger_lexicon();
        std::vector<std::string> large = small;
        large.push_back(extra[rng() % extra.size()]);

        auto flagged_small = detect_data_sentences(sentences, small);
        auto flagged_large = detect_data_sentences(sentences, large);
        REQUIRE(flagged_small.size() == flagged_large.size());
        for (std::size_t k = 0; k < flagged_small.size(); ++k) {
            if (flagged_small[k].mentions_data) {
                CHECK(flagged_large[k].mentions_data);
            }
        }
    }
}

TEST_CASE("detection is deterministic") {
    CleanText clean = clean_text("Solar data and weather data sets. No mention here.");
    auto a = detect_data_sentences(segment_sentences(clean), default_trigger_lexicon());
    auto b = detect_data_sentences(segment_sentences(clean), default_trigger_lexicon());
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].text == b[i].text);
        CHECK(a[i].mentions_data == b[i].mentions_data);
        CHECK(a[i].trigger == b[i].trigger);
    }
}

}  // TEST_SUITE
