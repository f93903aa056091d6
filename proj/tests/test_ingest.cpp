#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "narmap/errors.hpp"
#include "narmap/ingest.hpp"

using namespace narmap;

TEST_CASE("load_document passes text through and normalizes line endings") {
    const Document doc = load_document("Chapter 1\nIt began.", "d");
    CHECK(doc.raw_text == "Chapter 1\nIt began.");
    CHECK(doc.segments.empty());

    CHECK(load_document("a\r\nb", "d").raw_text == "a\nb");
    CHECK(load_document("a\rb\r\nc\r", "d").raw_text == "a\nb\nc\n");
}

TEST_CASE("load_document strips a UTF-8 BOM") {
    const std::string bom = "\xEF\xBB\xBFhello";
    CHECK(load_document(bom, "d").raw_text == "hello");
}

TEST_CASE("load_document reports the byte offset of invalid UTF-8") {
    const std::string bad = std::string("abc") + '\xFF' + "def";
    try {
        load_document(bad, "d");
        FAIL("expected EncodingError");
    } catch (const EncodingError& e) {
        CHECK(e.byte_offset == 3);
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
}

TEST_CASE("load_document rejects empty input") {
    CHECK_THROWS_AS(load_document("", "d"), InputError);
    CHECK_THROWS_AS(load_document("\xEF\xBB\xBF", "d"), InputError);
}

TEST_CASE("segment_document splits on explicit chapter headings") {
    Document doc = load_document("Chapter 1\naaa\nChapter 2\nbbb", "d");
    doc = segment_document(std::move(doc));
    REQUIRE(doc.segments.size() == 2);
    CHECK(doc.segments[0].label == "Chapter 1");
    CHECK(doc.segments[0].text == "aaa");
    CHECK(doc.segments[1].label == "Chapter 2");
    CHECK(doc.segments[1].text == "bbb");
    CHECK(doc.segments[0].index == 0);
    CHECK(doc.segments[1].index == 1);
}

TEST_CASE("segment_document falls back to blank-line splitting") {
    Document doc = load_document("one block\n\n\n\nanother block", "d");
    SegmentationRules rules;
    rules.fallback_blank_lines = 2;
    doc = segment_document(std::move(doc), rules);
    REQUIRE(doc.segments.size() == 2);
    CHECK(doc.segments[0].label == "Section 1");
    CHECK(doc.segments[1].label == "Section 2");
    CHECK(doc.segments[0].text == "one block");
    CHECK(doc.segments[1].text == "another block");
}

TEST_CASE("short blank runs do not split in fallback mode") {
    Document doc = load_document("one\n\nstill one", "d");
    SegmentationRules rules;
    rules.fallback_blank_lines = 2;
    doc = segment_document(std::move(doc), rules);
    REQUIRE(doc.segments.size() == 1);
    CHECK(doc.segments[0].label == "Section 1");
}

TEST_CASE("a single chapter yields a single segment") {
    Document doc = segment_document(load_document("Chapter 1\naaa", "d"));
    REQUIRE(doc.segments.size() == 1);
    CHECK(doc.segments[0].label == "Chapter 1");
    CHECK(doc.segments[0].text == "aaa");
}

TEST_CASE("markdown headings delimit segments and lose their hashes") {
    Document doc = segment_document(load_document("# Prologue\nxx\n## Part 2\nyy", "d"));
    REQUIRE(doc.segments.size() == 2);
    CHECK(doc.segments[0].label == "Prologue");
    CHECK(doc.segments[1].label == "Part 2");
}

TEST_CASE("front matter is kept above the floor and dropped below it") {
    SUBCASE("kept") {
        Document doc = segment_document(load_document("intro text\nChapter 1\naaa", "d"));
        REQUIRE(doc.segments.size() == 2);
        CHECK(doc.segments[0].label == "Front matter");
        CHECK(doc.segments[0].text == "intro text");
    }
    SUBCASE("dropped with a warning") {
        Document raw = load_document("hi\nChapter 1\nplenty of text here", "d");
        SegmentationRules rules;
        rules.min_segment_chars = 5;
        Document doc = segment_document(std::move(raw), rules);
        REQUIRE(doc.segments.size() == 1);
        CHECK(doc.segments[0].label == "Chapter 1");
        REQUIRE(doc.warnings.size() == 1);
        CHECK(doc.warnings[0].find("front matter") != std::string::npos);
    }
}

TEST_CASE("sub-floor segments merge into their predecessor") {
    SegmentationRules rules;
    rules.min_segment_chars = 4;
    Document doc = segment_document(
        load_document("Chapter 1\nlong enough\nChapter 2\nab\nChapter 3\nalso long", "d"), rules);
    REQUIRE(doc.segments.size() == 2);
    CHECK(doc.segments[0].label == "Chapter 1");
    CHECK(doc.segments[0].text == "long enough\nab");
    CHECK(doc.segments[1].label == "Chapter 3");
    CHECK(doc.warnings.size() == 1);
}

TEST_CASE("a heading with an empty body merges forward when it comes first") {
    Document doc = segment_document(load_document("Chapter 1\nChapter 2\nbody text", "d"));
    REQUIRE(doc.segments.size() == 1);
    CHECK(doc.segments[0].label == "Chapter 2");
    CHECK(doc.segments[0].text == "body text");
}

TEST_CASE("zero segments is an error") {
    Document doc = load_document("   \n \n ", "d");
    CHECK_THROWS_AS(segment_document(std::move(doc)), SegmentationError);
}

TEST_CASE("duplicate heading labels are de-duplicated") {
    Document doc =
        segment_document(load_document("Chapter 1\naaa\nChapter 1\nbbb\nChapter 1\nccc", "d"));
    REQUIRE(doc.segments.size() == 3);
    CHECK(doc.segments[0].label == "Chapter 1");
    CHECK(doc.segments[1].label == "Chapter 1 #2");
    CHECK(doc.segments[2].label == "Chapter 1 #3");
}

TEST_CASE("labels stay unique even when a heading matches a dedup suffix") {
    Document doc = segment_document(
        load_document("Chapter 1\naaa\nChapter 1\nbbb\nChapter 1 #2\nccc", "d"));
    REQUIRE(doc.segments.size() == 3);
    std::set<std::string> labels;
    for (const auto& seg : doc.segments) labels.insert(seg.label);
    CHECK(labels.size() == 3);
}

TEST_CASE("'Chapters' at the start of a line is not a heading") {
    Document doc = segment_document(load_document("Chapter 1\nChapters are fun.\nmore", "d"));
    REQUIRE(doc.segments.size() == 1);
    CHECK(doc.segments[0].text == "Chapters are fun.\nmore");
}

TEST_CASE("custom boundary patterns are honored and bad ones rejected") {
    SegmentationRules rules;
    rules.boundary_pattern = R"(== .* ==)";
    Document doc = segment_document(load_document("== one ==\naaa\n== two ==\nbbb", "d"), rules);
    REQUIRE(doc.segments.size() == 2);
    CHECK(doc.segments[0].label == "== one ==");

    rules.boundary_pattern = "([unclosed";
    CHECK_THROWS_AS(segment_document(load_document("x", "d"), rules), SegmentationError);
}

TEST_CASE("every body character lands in exactly one segment or heading") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> word_count(1, 6);
    std::uniform_int_distribution<int> line_count(1, 4);
    std::uniform_int_distribution<int> chapter_count(1, 8);

    for (int trial = 0; trial < 50; ++trial) {
        std::string text;
        std::vector<std::string> headings;
        const int chapters = chapter_count(rng);
        for (int c = 0; c < chapters; ++c) {
            const std::string heading = "Chapter " + std::to_string(c + 1);
            headings.push_back(heading);
            text += heading + "\n";
            const int lines = line_count(rng);
            for (int l = 0; l < lines; ++l) {
                const int words = word_count(rng);
                for (int w = 0; w < words; ++w) {
                    if (w > 0) text += ' ';
                    text += "word" + std::to_string((c + l + w) % 5);
                }
                text += '\n';
            }
        }
        text.pop_back(); // no trailing newline in the last body line

        Document doc = segment_document(load_document(text, "d"));
        REQUIRE(doc.segments.size() == headings.size());

        // Rebuild the input from headings + segment texts.
        std::string rebuilt;
        for (std::size_t i = 0; i < doc.segments.size(); ++i) {
            rebuilt += headings[i] + "\n" + doc.segments[i].text;
            if (i + 1 < doc.segments.size()) rebuilt += "\n";
        }
        CHECK(rebuilt == doc.raw_text);
    }
}

TEST_CASE("segmentation is deterministic") {
    const std::string text = "Chapter 1\none two\n\nChapter 2\nthree";
    const Document a = segment_document(load_document(text, "d"));
    const Document b = segment_document(load_document(text, "d"));
    REQUIRE(a.segments.size() == b.segments.size());
    for (std::size_t i = 0; i < a.segments.size(); ++i) {
        CHECK(a.segments[i].label == b.segments[i].label);
        CHECK(a.segments[i].text == b.segments[i].text);
    }
}

TEST_CASE("load_document_file rejects unsupported extensions") {
    CHECK_THROWS_AS(load_document_file("novel.docx"), InputError);
}
