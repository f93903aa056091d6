#include "narmap/compare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <unordered_map>

#include "narmap/errors.hpp"

namespace narmap {

PooledAnalysis pooled_projection(const std::vector<Document>& docs,
                                 std::span<const std::string> labels,
                                 const TokenRules& rules,
                                 const VocabularyPolicy& policy) {
    if (docs.empty()) {
        throw ArgumentError("pooled projection needs at least one document");
    }
    if (!labels.empty() && labels.size() != docs.size()) {
        throw ArgumentError("label count does not match document count");
    }

    std::vector<std::string> doc_labels;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        doc_labels.push_back(labels.empty() ? docs[d].source_name : labels[d]);
    }
    {
        std::set<std::string> unique(doc_labels.begin(), doc_labels.end());
        if (unique.size() != doc_labels.size()) {
            throw ArgumentError("document labels must be unique");
        }
    }

    std::vector<Segment> pooled;
    std::vector<std::size_t> row_doc;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        if (docs[d].segments.size() < 2) {
            throw TableError("document '" + doc_labels[d] + "' has fewer than 2 segments");
        }
        for (const auto& seg : docs[d].segments) {
            Segment copy = seg;
            copy.index = pooled.size();
            copy.label = doc_labels[d] + "/" + seg.label;
            pooled.push_back(std::move(copy));
            row_doc.push_back(d);
        }
    }

    PooledAnalysis analysis;
    analysis.doc_labels = doc_labels;
    analysis.doc_glyphs = assign_glyphs(doc_labels);
    analysis.row_doc = std::move(row_doc);
    analysis.table = CrossTab::build(pooled, rules, policy);
    analysis.embedding = correspondence_analysis(analysis.table);

    // Per-document dispersion in full embedding space.
    const Mat& F = analysis.embedding.row_principal;
    const auto& masses = analysis.embedding.row_masses;
    analysis.dispersion.assign(docs.size(), 0.0);
    for (std::size_t d = 0; d < docs.size(); ++d) {
        double total_mass = 0.0;
        std::vector<double> centroid(F.cols, 0.0);
        for (std::size_t i = 0; i < F.rows; ++i) {
            if (analysis.row_doc[i] != d) continue;
            total_mass += masses[i];
            for (std::size_t k = 0; k < F.cols; ++k) centroid[k] += masses[i] * F(i, k);
        }
        for (double& c : centroid) c /= total_mass;
        double acc = 0.0;
        for (std::size_t i = 0; i < F.rows; ++i) {
            if (analysis.row_doc[i] != d) continue;
            double dist2 = 0.0;
            for (std::size_t k = 0; k < F.cols; ++k) {
                const double diff = F(i, k) - centroid[k];
                dist2 += diff * diff;
            }
            acc += masses[i] * dist2;
        }
        analysis.dispersion[d] = std::sqrt(acc / total_mass);
    }
    return analysis;
}

double dispersion(const PooledAnalysis& analysis, std::string_view doc_label) {
    for (std::size_t d = 0; d < analysis.doc_labels.size(); ++d) {
        if (analysis.doc_labels[d] == doc_label) return analysis.dispersion[d];
    }
    throw ArgumentError("unknown document label '" + std::string(doc_label) + "'");
}

PlotModel pooled_factor_map(const PooledAnalysis& analysis, int axis_x, int axis_y) {
    FactorMapOptions options;
    options.series = "pooled";
    PlotModel model = factor_map(analysis.embedding, axis_x, axis_y, options);
    for (std::size_t i = 0; i < model.points.size(); ++i) {
        const std::size_t d = analysis.row_doc[i];
        model.points[i].series = analysis.doc_labels[d];
        model.points[i].glyph = analysis.doc_glyphs[d];
    }
    model.title = "Pooled factor map";
    return model;
}

SnapshotDelta snapshot_diff(const AnalysisReport& before, const AnalysisReport& after) {
    if (before.kind != "analysis" || after.kind != "analysis") {
        throw InputError("snapshot diff requires analysis reports");
    }

    SnapshotDelta delta;
    delta.version_mismatch = before.tool_version != after.tool_version ||
                             before.schema_id != after.schema_id;

    std::unordered_map<std::string, std::size_t> index_after;
    for (std::size_t i = 0; i < after.segments.size(); ++i) {
        index_after.emplace(after.segments[i].label, i);
    }

    std::set<std::string> matched_labels;
    for (std::size_t i = 0; i < before.segments.size(); ++i) {
        const std::string& label = before.segments[i].label;
        auto it = index_after.find(label);
        if (it == index_after.end()) {
            delta.removed.push_back(label);
            continue;
        }
        const std::size_t jdx = it->second;
        matched_labels.insert(label);
        SegmentDelta d;
        d.label = label;
        d.score_before = before.outliers.centroid_distance.at(i);
        d.score_after = after.outliers.centroid_distance.at(jdx);
        d.score_delta = d.score_after - d.score_before;
        d.rank_before = before.outliers.rank.at(i);
        d.rank_after = after.outliers.rank.at(jdx);
        d.rank_delta = static_cast<std::int64_t>(d.rank_after) -
                       static_cast<std::int64_t>(d.rank_before);
        delta.matched.push_back(std::move(d));
    }
    for (const auto& seg : after.segments) {
        if (matched_labels.count(seg.label) == 0) delta.added.push_back(seg.label);
    }
    if (delta.matched.empty()) {
        throw InputError("no segment labels in common between the two reports");
    }

    std::stable_sort(delta.matched.begin(), delta.matched.end(),
                     [](const SegmentDelta& a, const SegmentDelta& b) {
                         const double ma = std::abs(a.score_delta);
                         const double mb = std::abs(b.score_delta);
                         if (ma != mb) return ma > mb;
                         return a.label < b.label;
                     });
    return delta;
}

std::string delta_to_json(const SnapshotDelta& delta, const std::vector<std::string>& inputs) {
    auto real = [](double v) {
        if (v == 0.0) return std::string("0");
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        return std::string(buf);
    };
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
            }
        }
        out += '"';
        return out;
    };

    std::ostringstream out;
    out << "{\n";
    out << "  \"schema_id\": " << quote(kDeltaSchemaId) << ",\n";
    out << "  \"tool_version\": " << quote(kToolVersion) << ",\n";
    out << "  \"inputs\": [";
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (i > 0) out << ", ";
        out << quote(inputs[i]);
    }
    out << "],\n";
    out << "  \"version_mismatch\": " << (delta.version_mismatch ? "true" : "false") << ",\n";
    out << "  \"matched\": [\n";
    for (std::size_t i = 0; i < delta.matched.size(); ++i) {
        const auto& d = delta.matched[i];
        out << "    {\"label\": " << quote(d.label) << ", \"score_before\": "
            << real(d.score_before) << ", \"score_after\": " << real(d.score_after)
            << ", \"score_delta\": " << real(d.score_delta)
            << ", \"rank_before\": " << d.rank_before << ", \"rank_after\": " << d.rank_after
            << ", \"rank_delta\": " << d.rank_delta << "}";
        if (i + 1 < delta.matched.size()) out << ',';
        out << '\n';
    }
    out << "  ],\n";
    auto string_list = [&](const std::vector<std::string>& items) {
        std::string s = "[";
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (i > 0) s += ", ";
            s += quote(items[i]);
        }
        s += "]";
        return s;
    };
    out << "  \"added\": " << string_list(delta.added) << ",\n";
    out << "  \"removed\": " << string_list(delta.removed) << "\n";
    out << "}\n";
    return out.str();
}

} // namespace narmap
