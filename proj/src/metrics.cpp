#include "narmap/metrics.hpp"

#include <cctype>

#include "narmap/crosstab.hpp"
#include "narmap/errors.hpp"

namespace narmap {

namespace {

bool is_vowel(char c) {
    switch (c) {
    case 'a':
    case 'e':
    case 'i':
    case 'o':
    case 'u':
    case 'y':
        return true;
    default:
        return false;
    }
}

// Word counting for readability: punctuation-split, numerals kept,
// nothing removed.
TokenRules metric_token_rules() {
    TokenRules rules;
    rules.lowercase = true;
    rules.strip_numerals = false;
    rules.stopwords.reset();
    return rules;
}

} // namespace

std::size_t count_syllables(std::string_view word) {
    std::size_t groups = 0;
    bool in_group = false;
    char last = 0;
    for (char raw : word) {
        const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(raw)));
        if (is_vowel(c)) {
            if (!in_group) {
                ++groups;
                in_group = true;
            }
        } else {
            in_group = false;
        }
        last = c;
    }
    if (groups > 1 && last == 'e') --groups;
    return groups == 0 ? 1 : groups;
}

std::size_t count_sentences(std::string_view text) {
    std::size_t boundaries = 0;
    std::size_t tail_start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if ((c == '.' || c == '!' || c == '?') &&
            (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
            ++boundaries;
            tail_start = i + 1;
        }
    }
    // Unterminated trailing text counts as a sentence.
    if (!tokenize(text.substr(tail_start), metric_token_rules()).empty()) ++boundaries;
    return boundaries;
}

SegmentMetrics segment_metrics(const Segment& segment) {
    const std::vector<std::string> words = tokenize(segment.text, metric_token_rules());
    if (words.empty()) {
        throw MetricError("segment '" + segment.label + "' has no words");
    }
    SegmentMetrics m;
    m.word_count = words.size();
    m.sentence_count = count_sentences(segment.text);
    if (m.sentence_count == 0) m.sentence_count = 1;
    for (const auto& w : words) m.syllable_count += count_syllables(w);
    m.flesch_reading_ease =
        206.835 -
        1.015 * (static_cast<double>(m.word_count) / static_cast<double>(m.sentence_count)) -
        84.6 * (static_cast<double>(m.syllable_count) / static_cast<double>(m.word_count));
    m.valid = true;
    return m;
}

double flesch_reading_ease(const Segment& segment) {
    return segment_metrics(segment).flesch_reading_ease;
}

std::vector<SegmentMetrics> per_segment_metrics(const Document& doc) {
    if (doc.segments.empty()) {
        throw ArgumentError("document has not been segmented: " + doc.source_name);
    }
    std::vector<SegmentMetrics> out;
    out.reserve(doc.segments.size());
    for (const auto& seg : doc.segments) {
        try {
            out.push_back(segment_metrics(seg));
        } catch (const MetricError& e) {
            SegmentMetrics failed;
            failed.valid = false;
            failed.error = e.what();
            out.push_back(std::move(failed));
        }
    }
    return out;
}

PlotModel metrics_chart(std::span<const SegmentMetrics> metrics,
                        std::span<const std::string> labels) {
    if (metrics.size() != labels.size()) {
        throw ArgumentError("metric and label counts differ");
    }
    PlotModel model;
    model.kind = PlotKind::line;
    model.title = "Flesch reading ease by segment";
    model.x_caption = "Segment";
    model.y_caption = "Flesch reading ease";
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        if (!metrics[i].valid) continue;
        PlotPoint pt;
        pt.x = static_cast<double>(i);
        pt.y = metrics[i].flesch_reading_ease;
        pt.label = labels[i];
        pt.series = "flesch";
        model.points.push_back(std::move(pt));
    }
    return model;
}

} // namespace narmap
