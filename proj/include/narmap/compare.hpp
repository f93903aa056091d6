#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "narmap/ca.hpp"
#include "narmap/crosstab.hpp"
#include "narmap/ingest.hpp"
#include "narmap/report.hpp"
#include "narmap/viz.hpp"

namespace narmap {

// Every segment of every document active in one shared table, so all
// manuscripts land in one common map.
struct PooledAnalysis {
    std::vector<std::string> doc_labels;
    std::vector<std::string> doc_glyphs;
    std::vector<std::size_t> row_doc; // pooled row -> document index
    CrossTab table;
    CAEmbedding embedding;
    std::vector<double> dispersion; // per document
};

// Documents must be segmented, each with at least 2 segments, and doc
// labels must be unique. An empty label list falls back to source names.
PooledAnalysis pooled_projection(const std::vector<Document>& docs,
                                 std::span<const std::string> labels,
                                 const TokenRules& rules = {},
                                 const VocabularyPolicy& policy = {});

// Mass-weighted RMS full-space distance of a document's segments to
// their own mass-weighted centroid: the tightness of its voice.
double dispersion(const PooledAnalysis& analysis, std::string_view doc_label);

PlotModel pooled_factor_map(const PooledAnalysis& analysis, int axis_x, int axis_y);

struct SegmentDelta {
    std::string label;
    double score_before = 0.0;
    double score_after = 0.0;
    double score_delta = 0.0;
    std::size_t rank_before = 0;
    std::size_t rank_after = 0;
    std::int64_t rank_delta = 0;
};

struct SnapshotDelta {
    std::vector<SegmentDelta> matched; // sorted by |score_delta| descending
    std::vector<std::string> added;    // labels only in the second report
    std::vector<std::string> removed;  // labels only in the first
    bool version_mismatch = false;
};

// Matches segments across two analysis reports by label.
SnapshotDelta snapshot_diff(const AnalysisReport& before, const AnalysisReport& after);

std::string delta_to_json(const SnapshotDelta& delta, const std::vector<std::string>& inputs);

} // namespace narmap
