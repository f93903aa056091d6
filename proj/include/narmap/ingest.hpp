#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace narmap {

struct Segment {
    std::size_t index = 0;
    std::string label;
    std::string text;
};

struct SegmentationRules {
    // Full-line pattern marking a chapter boundary (ECMAScript regex,
    // matched against each line without its newline).
    std::string boundary_pattern;
    // When no line matches the boundary pattern, a run of at least this
    // many blank lines separates sections.
    int fallback_blank_lines = 2;
    // Candidate segments with fewer non-whitespace characters are merged
    // into their predecessor (front matter below the floor is dropped).
    std::size_t min_segment_chars = 1;

    SegmentationRules();
};

// Matches "Chapter ..."/"CHAPTER ..." lines and markdown "# ..." headings.
std::string default_boundary_pattern();

struct Document {
    std::string source_name;
    std::string raw_text;
    std::vector<Segment> segments;
    std::vector<std::string> warnings;
};

// Decodes UTF-8 (BOM tolerated) and normalizes line endings to "\n".
// Throws EncodingError with the byte offset on malformed input and
// InputError on empty input. Segments stay empty until segment_document.
Document load_document(std::string_view bytes, std::string name);

// Reads a .txt or .md file; other extensions are rejected.
Document load_document_file(const std::filesystem::path& path);

// Splits the body into ordered segments. Heading lines become labels and
// are excluded from segment text; text before the first heading becomes
// "Front matter" when it clears min_segment_chars, otherwise it is
// dropped with a warning. Without any heading match, blank-line runs
// split the text into "Section k" segments; failing that, the whole text
// is a single segment. Duplicate labels get a " #k" suffix.
Document segment_document(Document doc, const SegmentationRules& rules = {});

} // namespace narmap
