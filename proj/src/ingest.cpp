#include "narmap/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "narmap/errors.hpp"
#include "narmap/unicode.hpp"

namespace narmap {

std::string default_boundary_pattern() {
    return R"([ \t]*(?:#{1,6}[ \t]+\S.*|(?:Chapter|CHAPTER)(?:[ \t]+\S.*)?[ \t]*))";
}

SegmentationRules::SegmentationRules() : boundary_pattern(default_boundary_pattern()) {}

Document load_document(std::string_view bytes, std::string name) {
    validate_utf8(bytes);

    std::string_view body = bytes;
    if (body.size() >= 3 && static_cast<unsigned char>(body[0]) == 0xEF &&
        static_cast<unsigned char>(body[1]) == 0xBB && static_cast<unsigned char>(body[2]) == 0xBF) {
        body.remove_prefix(3);
    }
    if (body.empty()) {
        throw InputError("empty input: " + name);
    }

    std::string text;
    text.reserve(body.size());
    for (std::size_t i = 0; i < body.size(); ++i) {
        const char c = body[i];
        if (c == '\r') {
            if (i + 1 < body.size() && body[i + 1] == '\n') ++i;
            text.push_back('\n');
        } else {
            text.push_back(c);
        }
    }

    Document doc;
    doc.source_name = std::move(name);
    doc.raw_text = std::move(text);
    return doc;
}

Document load_document_file(const std::filesystem::path& path) {
    const std::string ext = path.extension().string();
    if (ext != ".txt" && ext != ".md") {
        throw InputError("unsupported file type '" + ext + "' (expected .txt or .md): " + path.string());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_document(buf.str(), path.filename().string());
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            lines.emplace_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    return lines;
}

bool is_blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

std::size_t non_whitespace_chars(const std::string& text) {
    std::size_t count = 0;
    std::size_t pos = 0;
    char32_t cp = 0;
    while (utf8_next(text, pos, cp)) {
        if (cp > 0x7F || std::isspace(static_cast<unsigned char>(cp)) == 0) ++count;
    }
    return count;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string heading_label(const std::string& line) {
    std::string t = trim(line);
    if (!t.empty() && t.front() == '#') {
        std::size_t i = 0;
        while (i < t.size() && t[i] == '#') ++i;
        while (i < t.size() && (t[i] == ' ' || t[i] == '\t')) ++i;
        std::string stripped = trim(t.substr(i));
        if (!stripped.empty()) return stripped;
    }
    return t;
}

std::string join_lines(const std::vector<std::string>& lines, std::size_t begin, std::size_t end) {
    std::string out;
    for (std::size_t i = begin; i < end; ++i) {
        if (i > begin) out.push_back('\n');
        out += lines[i];
    }
    return out;
}

struct Candidate {
    std::string label;
    std::string text;
    bool front_matter = false;
};

void dedupe_labels(std::vector<Segment>& segments) {
    std::map<std::string, std::size_t> counters;
    std::set<std::string> used;
    for (auto& seg : segments) {
        std::string label = seg.label;
        if (used.count(label) > 0) {
            std::size_t& n = counters[seg.label];
            if (n == 0) n = 1;
            do {
                label = seg.label + " #" + std::to_string(++n);
            } while (used.count(label) > 0);
        }
        used.insert(label);
        seg.label = std::move(label);
    }
}

} // namespace

Document segment_document(Document doc, const SegmentationRules& rules) {
    if (doc.raw_text.empty()) {
        throw SegmentationError("document has no text: " + doc.source_name);
    }
    if (rules.fallback_blank_lines < 2) {
        throw ArgumentError("fallback_blank_lines must be >= 2");
    }

    std::regex boundary;
    try {
        boundary = std::regex(rules.boundary_pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
        throw SegmentationError(std::string("invalid boundary pattern: ") + e.what());
    }

    const std::vector<std::string> lines = split_lines(doc.raw_text);
    std::vector<std::size_t> heading_idx;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (std::regex_match(lines[i], boundary)) heading_idx.push_back(i);
    }

    std::vector<Candidate> candidates;
    if (!heading_idx.empty()) {
        if (heading_idx.front() > 0) {
            Candidate front;
            front.label = "Front matter";
            front.text = join_lines(lines, 0, heading_idx.front());
            front.front_matter = true;
            candidates.push_back(std::move(front));
        }
        for (std::size_t h = 0; h < heading_idx.size(); ++h) {
            const std::size_t begin = heading_idx[h] + 1;
            const std::size_t end = (h + 1 < heading_idx.size()) ? heading_idx[h + 1] : lines.size();
            Candidate c;
            c.label = heading_label(lines[heading_idx[h]]);
            c.text = join_lines(lines, begin, end);
            candidates.push_back(std::move(c));
        }
    } else {
        // Fallback: split on runs of blank lines.
        std::size_t block_start = 0;
        std::size_t i = 0;
        std::vector<std::pair<std::size_t, std::size_t>> blocks;
        while (i < lines.size()) {
            if (is_blank(lines[i])) {
                std::size_t run_end = i;
                while (run_end < lines.size() && is_blank(lines[run_end])) ++run_end;
                if (run_end - i >= static_cast<std::size_t>(rules.fallback_blank_lines)) {
                    blocks.emplace_back(block_start, i);
                    block_start = run_end;
                }
                i = run_end;
            } else {
                ++i;
            }
        }
        blocks.emplace_back(block_start, lines.size());
        std::size_t ordinal = 1;
        for (const auto& [b, e] : blocks) {
            // Separator runs at the edges leave blocks with no content.
            bool has_content = false;
            for (std::size_t l = b; l < e && !has_content; ++l) has_content = !is_blank(lines[l]);
            if (!has_content) continue;
            Candidate c;
            c.label = "Section " + std::to_string(ordinal++);
            c.text = join_lines(lines, b, e);
            candidates.push_back(std::move(c));
        }
    }

    // Enforce the size floor. Segment text must be non-empty, so the
    // effective floor is at least one non-whitespace character.
    const std::size_t floor = std::max<std::size_t>(rules.min_segment_chars, 1);
    std::vector<Segment> segments;
    std::string carry; // sub-floor text waiting for the first accepted segment
    for (auto& cand : candidates) {
        const std::size_t chars = non_whitespace_chars(cand.text);
        if (chars >= floor) {
            Segment seg;
            seg.label = std::move(cand.label);
            if (!carry.empty()) {
                seg.text = carry + "\n" + cand.text;
                carry.clear();
            } else {
                seg.text = std::move(cand.text);
            }
            segments.push_back(std::move(seg));
        } else if (cand.front_matter) {
            doc.warnings.push_back("front matter (" + std::to_string(chars) +
                                   " characters) below min_segment_chars; dropped");
        } else if (segments.empty()) {
            doc.warnings.push_back("segment '" + cand.label +
                                   "' below min_segment_chars; merged into the next segment");
            if (!cand.text.empty()) {
                if (!carry.empty()) carry += "\n";
                carry += cand.text;
            }
        } else {
            doc.warnings.push_back("segment '" + cand.label +
                                   "' below min_segment_chars; merged into '" +
                                   segments.back().label + "'");
            if (!cand.text.empty()) {
                segments.back().text += "\n" + cand.text;
            }
        }
    }
    if (segments.empty()) {
        throw SegmentationError("segmentation produced zero segments: " + doc.source_name);
    }

    dedupe_labels(segments);
    for (std::size_t i = 0; i < segments.size(); ++i) segments[i].index = i;
    doc.segments = std::move(segments);
    return doc;
}

} // namespace narmap
