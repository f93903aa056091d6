#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "narmap/cluster.hpp"
#include "narmap/matrix.hpp"
#include "narmap/metrics.hpp"
#include "narmap/outliers.hpp"

namespace narmap {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchemaId = "narmap-report/1";
inline constexpr const char* kDeltaSchemaId = "narmap-delta/1";

// Echo of every knob that shaped a run; enough to reproduce it.
struct ReportConfig {
    std::string segment_regex;
    int fallback_blank_lines = 2;
    std::size_t min_segment_chars = 1;
    bool lowercase = true;
    bool strip_numerals = true;
    std::vector<std::string> stopwords;
    std::int64_t min_count = 2;
    std::int64_t min_presence = 1;
    std::string linkage = "complete";
    int axis_x = 1;
    int axis_y = 2;
    double flag_fraction = 0.1;
    std::vector<std::string> labels; // comparison runs only
};

struct SegmentSummary {
    std::size_t index = 0;
    std::string label;
    std::size_t chars = 0;     // non-whitespace characters
    std::string document;      // owning document label (comparison runs)
};

struct DocumentSummary {
    std::string label;
    std::string glyph;
    std::size_t segment_count = 0;
    double dispersion = 0.0;
};

// The persistent result of one run. kind is "analysis" (single
// manuscript: clustering, outliers, metrics) or "comparison" (pooled
// map over several manuscripts: documents and dispersion instead).
struct AnalysisReport {
    std::string schema_id = kReportSchemaId;
    std::string kind = "analysis";
    std::string tool_version = kToolVersion;
    std::vector<std::string> inputs;
    ReportConfig config;

    std::vector<SegmentSummary> segments;
    std::vector<std::string> warnings;
    std::size_t vocab_before = 0;
    std::size_t vocab_after = 0;

    double total_inertia = 0.0;
    std::vector<double> singular_values;
    std::vector<double> axis_inertia_pct;
    Mat row_coords; // all axes

    // analysis kind only
    bool has_inversions = false;
    std::vector<Merge> merges;
    OutlierReport outliers;
    std::vector<double> planar_distance; // distance on the two chosen axes
    std::vector<SegmentMetrics> metrics;

    // comparison kind only
    std::vector<DocumentSummary> documents;
    std::vector<std::size_t> row_doc; // row index -> documents index
};

// Stable key order, 12 significant digits for reals; serialize -> parse
// -> serialize is byte-identical.
std::string to_json(const AnalysisReport& report);

// Throws InputError on malformed or structurally wrong input.
AnalysisReport report_from_json(std::string_view text);

} // namespace narmap
