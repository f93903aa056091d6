#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "narmap/ingest.hpp"
#include "narmap/viz.hpp"

namespace narmap {

struct SegmentMetrics {
    std::size_t word_count = 0;
    std::size_t sentence_count = 0;
    std::size_t syllable_count = 0;
    double flesch_reading_ease = 0.0;
    bool valid = false;
    std::string error; // set when !valid
};

// Heuristic: maximal vowel groups (aeiouy), minus one for a silent final
// 'e' when the word has more than one group, floored at 1.
std::size_t count_syllables(std::string_view word);

// '.', '!' or '?' followed by whitespace or end of text; a trailing
// unterminated clause counts as one sentence.
std::size_t count_sentences(std::string_view text);

// 206.835 - 1.015 * words/sentences - 84.6 * syllables/words.
// Throws MetricError when the segment has no words.
double flesch_reading_ease(const Segment& segment);

SegmentMetrics segment_metrics(const Segment& segment);

// One record per segment; a failing segment is flagged instead of
// aborting the rest.
std::vector<SegmentMetrics> per_segment_metrics(const Document& doc);

PlotModel metrics_chart(std::span<const SegmentMetrics> metrics,
                        std::span<const std::string> labels);

} // namespace narmap
