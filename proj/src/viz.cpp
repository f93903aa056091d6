#include "narmap/viz.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "narmap/errors.hpp"
#include "narmap/unicode.hpp"

namespace narmap {

namespace {

// Fixed 3-decimal formatting keeps renders byte-stable; negative zero is
// normalized away.
std::string fmt3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    if (std::string_view(buf) == "-0.000") return "0.000";
    return buf;
}

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

struct Bounds {
    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
};

Bounds point_bounds(const std::vector<PlotPoint>& points) {
    Bounds b;
    b.min_x = b.max_x = points.front().x;
    b.min_y = b.max_y = points.front().y;
    for (const auto& p : points) {
        b.min_x = std::min(b.min_x, p.x);
        b.max_x = std::max(b.max_x, p.x);
        b.min_y = std::min(b.min_y, p.y);
        b.max_y = std::max(b.max_y, p.y);
    }
    return b;
}

void open_svg(std::ostringstream& out, int w, int h) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 " << w << ' '
        << h << "\" width=\"" << w << "\" height=\"" << h << "\">\n";
}

void caption_texts(std::ostringstream& out, const PlotModel& model, int w, int h, int margin) {
    if (!model.title.empty()) {
        out << "<text class=\"caption\" x=\"" << w / 2 << "\" y=\"" << margin / 2
            << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\">"
            << xml_escape(model.title) << "</text>\n";
    }
    out << "<text class=\"caption\" x=\"" << w / 2 << "\" y=\"" << h - 8
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">"
        << xml_escape(model.x_caption) << "</text>\n";
    out << "<text class=\"caption\" x=\"14\" y=\"" << h / 2
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\" "
        << "transform=\"rotate(-90 14 " << h / 2 << ")\">" << xml_escape(model.y_caption)
        << "</text>\n";
}

} // namespace

std::vector<std::string> assign_glyphs(std::span<const std::string> series_labels) {
    std::vector<std::string> glyphs;
    std::set<std::string> used;
    for (const auto& label : series_labels) {
        std::string base = "X";
        std::size_t pos = 0;
        char32_t cp = 0;
        while (utf8_next(label, pos, cp)) {
            if (is_word_letter(cp) || is_ascii_digit(cp)) {
                std::string g;
                append_utf8(g, cp >= U'a' && cp <= U'z' ? cp - 0x20 : cp);
                base = g;
                break;
            }
        }
        std::string glyph = base;
        for (int suffix = 2; used.count(glyph) > 0; ++suffix) {
            glyph = base + std::to_string(suffix);
        }
        used.insert(glyph);
        glyphs.push_back(glyph);
    }
    return glyphs;
}

std::string render_factor_map(const PlotModel& model, int size_px) {
    if (model.points.empty()) {
        throw ArgumentError("factor map model has no points");
    }
    const int w = size_px;
    const int h = size_px;
    const int margin = 48;

    Bounds b = point_bounds(model.points);
    double span_x = b.max_x - b.min_x;
    double span_y = b.max_y - b.min_y;
    if (span_x <= 0) span_x = 1.0;
    if (span_y <= 0) span_y = 1.0;
    const double avail = static_cast<double>(size_px - 2 * margin);
    // One scale for both axes keeps the map's geometry faithful.
    const double scale = std::min(avail / span_x, avail / span_y);
    const double cx = (b.min_x + b.max_x) / 2.0;
    const double cy = (b.min_y + b.max_y) / 2.0;

    auto sx = [&](double x) { return w / 2.0 + (x - cx) * scale; };
    auto sy = [&](double y) { return h / 2.0 - (y - cy) * scale; };

    std::ostringstream out;
    open_svg(out, w, h);
    out << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
        << "\" fill=\"#ffffff\"/>\n";

    // Crosshair through the data origin.
    out << "<line class=\"axis\" x1=\"" << fmt3(sx(b.min_x)) << "\" y1=\"" << fmt3(sy(0.0))
        << "\" x2=\"" << fmt3(sx(b.max_x)) << "\" y2=\"" << fmt3(sy(0.0))
        << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    out << "<line class=\"axis\" x1=\"" << fmt3(sx(0.0)) << "\" y1=\"" << fmt3(sy(b.min_y))
        << "\" x2=\"" << fmt3(sx(0.0)) << "\" y2=\"" << fmt3(sy(b.max_y))
        << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";

    caption_texts(out, model, w, h, margin);

    for (const auto& p : model.points) {
        const std::string x = fmt3(sx(p.x));
        const std::string y = fmt3(sy(p.y));
        if (p.highlight) {
            out << "<circle class=\"flag\" cx=\"" << x << "\" cy=\"" << y
                << "\" r=\"9\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n";
        }
        out << "<text class=\"glyph\" x=\"" << x << "\" y=\"" << y
            << "\" text-anchor=\"middle\" dominant-baseline=\"middle\" "
            << "font-family=\"monospace\" font-size=\"14\" fill=\""
            << (p.highlight ? "#c0392b" : "#222222") << "\">" << xml_escape(p.glyph)
            << "<title>" << xml_escape(p.label) << "</title></text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_line_chart(const PlotModel& model, int size_px) {
    if (model.points.empty()) {
        throw ArgumentError("line chart model has no points");
    }
    const int w = size_px;
    const int h = size_px * 5 / 8;
    const int margin = 48;

    Bounds b = point_bounds(model.points);
    double span_x = b.max_x - b.min_x;
    double span_y = b.max_y - b.min_y;
    if (span_x <= 0) span_x = 1.0;
    if (span_y <= 0) span_y = 1.0;

    auto sx = [&](double x) {
        return margin + (x - b.min_x) / span_x * static_cast<double>(w - 2 * margin);
    };
    auto sy = [&](double y) {
        return h - margin - (y - b.min_y) / span_y * static_cast<double>(h - 2 * margin);
    };

    std::ostringstream out;
    open_svg(out, w, h);
    out << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
        << "\" fill=\"#ffffff\"/>\n";
    out << "<line class=\"axis\" x1=\"" << margin << "\" y1=\"" << h - margin << "\" x2=\""
        << w - margin << "\" y2=\"" << h - margin
        << "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
    out << "<line class=\"axis\" x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
        << "\" y2=\"" << h - margin << "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";

    // Min/max value labels on the vertical axis.
    out << "<text class=\"tick\" x=\"" << margin - 4 << "\" y=\"" << h - margin
        << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">" << fmt3(b.min_y)
        << "</text>\n";
    out << "<text class=\"tick\" x=\"" << margin - 4 << "\" y=\"" << margin
        << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">" << fmt3(b.max_y)
        << "</text>\n";

    caption_texts(out, model, w, h, margin);

    out << "<polyline fill=\"none\" stroke=\"#2c5f8a\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < model.points.size(); ++i) {
        if (i > 0) out << ' ';
        out << fmt3(sx(model.points[i].x)) << ',' << fmt3(sy(model.points[i].y));
    }
    out << "\"/>\n";
    for (const auto& p : model.points) {
        out << "<circle class=\"dot\" cx=\"" << fmt3(sx(p.x)) << "\" cy=\"" << fmt3(sy(p.y))
            << "\" r=\"2.5\" fill=\"#2c5f8a\"><title>" << xml_escape(p.label)
            << "</title></circle>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_dendrogram(const Dendrogram& dend, std::span<const std::string> leaf_labels,
                              int size_px) {
    const std::size_t n = dend.leaf_count;
    if (n < 2 || dend.merges.empty()) {
        throw ArgumentError("dendrogram is empty");
    }
    if (leaf_labels.size() != n) {
        throw ArgumentError("leaf label count does not match dendrogram");
    }

    const int w = size_px;
    const int h = size_px * 5 / 8;
    const int margin = 52;
    const int label_band = 110; // room for rotated leaf labels
    const double base_y = h - margin - label_band;

    double max_height = 0.0;
    for (const auto& m : dend.merges) max_height = std::max(max_height, m.height);
    if (max_height <= 0.0) max_height = 1.0;

    const double slot = static_cast<double>(w - 2 * margin) / static_cast<double>(n);
    auto leaf_x = [&](std::size_t i) {
        return margin + slot * (static_cast<double>(i) + 0.5);
    };
    auto hy = [&](double height) {
        return base_y - height / max_height * (base_y - static_cast<double>(margin));
    };

    std::ostringstream out;
    open_svg(out, w, h);
    out << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
        << "\" fill=\"#ffffff\"/>\n";

    // Height scale on the left.
    out << "<line class=\"axis\" x1=\"" << margin / 2 << "\" y1=\"" << fmt3(hy(0.0)) << "\" x2=\""
        << margin / 2 << "\" y2=\"" << fmt3(hy(max_height))
        << "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
    for (double frac : {0.0, 0.5, 1.0}) {
        const double value = frac * max_height;
        out << "<text class=\"tick\" x=\"" << margin / 2 - 4 << "\" y=\"" << fmt3(hy(value))
            << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">" << fmt3(value)
            << "</text>\n";
    }

    // Anchors per cluster id; leaves sit on the baseline in segment order.
    std::vector<double> ax(2 * n - 1, 0.0), ay(2 * n - 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        ax[i] = leaf_x(i);
        ay[i] = base_y;
    }
    for (std::size_t m = 0; m < dend.merges.size(); ++m) {
        const Merge& mg = dend.merges[m];
        const double y = hy(mg.height);
        const double xl = ax[mg.left_id];
        const double xr = ax[mg.right_id];
        out << "<line class=\"merge\" x1=\"" << fmt3(xl) << "\" y1=\"" << fmt3(ay[mg.left_id])
            << "\" x2=\"" << fmt3(xl) << "\" y2=\"" << fmt3(y)
            << "\" stroke=\"#2c5f8a\" stroke-width=\"1.2\"/>\n";
        out << "<line class=\"merge\" x1=\"" << fmt3(xr) << "\" y1=\"" << fmt3(ay[mg.right_id])
            << "\" x2=\"" << fmt3(xr) << "\" y2=\"" << fmt3(y)
            << "\" stroke=\"#2c5f8a\" stroke-width=\"1.2\"/>\n";
        out << "<line class=\"merge\" x1=\"" << fmt3(xl) << "\" y1=\"" << fmt3(y) << "\" x2=\""
            << fmt3(xr) << "\" y2=\"" << fmt3(y)
            << "\" stroke=\"#2c5f8a\" stroke-width=\"1.2\"/>\n";
        ax[n + m] = (xl + xr) / 2.0;
        ay[n + m] = y;
    }

    // Leaf labels, rotated, in narrative order.
    for (std::size_t i = 0; i < n; ++i) {
        const std::string x = fmt3(leaf_x(i));
        const std::string y = fmt3(base_y + 12.0);
        out << "<text class=\"leaf\" x=\"" << x << "\" y=\"" << y
            << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\" "
            << "transform=\"rotate(-60 " << x << ' ' << y << ")\">"
            << xml_escape(leaf_labels[i]) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace narmap
