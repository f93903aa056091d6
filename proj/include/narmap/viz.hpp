#pragma once

#include <span>
#include <string>
#include <vector>

#include "narmap/cluster.hpp"

namespace narmap {

enum class PlotKind { scatter, dendrogram, line };

struct PlotPoint {
    double x = 0.0;
    double y = 0.0;
    std::string label;
    std::string glyph;
    std::string series;
    bool highlight = false;
};

struct PlotModel {
    PlotKind kind = PlotKind::scatter;
    std::string title;
    std::string x_caption;
    std::string y_caption;
    std::vector<PlotPoint> points;
    // Set when a requested axis did not exist and its coordinate was
    // filled with zero.
    bool padded_axes = false;
};

// One glyph per series: first letter of the label uppercased, collisions
// de-duplicated by appending digits ("A", "A2", ...).
std::vector<std::string> assign_glyphs(std::span<const std::string> series_labels);

// All renderers emit standalone SVG 1.1 with an explicit viewBox and
// fixed 3-decimal coordinates, so identical models give identical bytes.
std::string render_factor_map(const PlotModel& model, int size_px = 640);
std::string render_line_chart(const PlotModel& model, int size_px = 800);
std::string render_dendrogram(const Dendrogram& dend, std::span<const std::string> leaf_labels,
                              int size_px = 800);

} // namespace narmap
