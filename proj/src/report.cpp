#include "narmap/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "narmap/errors.hpp"

namespace narmap {

namespace {

using ordered_json = nlohmann::ordered_json;

// nlohmann's dump() uses shortest-round-trip doubles; the report format
// pins 12 significant digits instead, so emission is done by hand.
std::string format_real(double v) {
    if (!std::isfinite(v)) return "null";
    if (v == 0.0) return "0"; // fold negative zero
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_json(const ordered_json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
    case ordered_json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        std::size_t i = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++i) {
            out += pad_in;
            out += ordered_json(it.key()).dump();
            out += ": ";
            write_json(it.value(), out, indent + 1);
            if (i + 1 < j.size()) out += ',';
            out += '\n';
        }
        out += pad + "}";
        return;
    }
    case ordered_json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out += pad_in;
            write_json(j[i], out, indent + 1);
            if (i + 1 < j.size()) out += ',';
            out += '\n';
        }
        out += pad + "]";
        return;
    }
    case ordered_json::value_t::number_float:
        out += format_real(j.get<double>());
        return;
    default:
        out += j.dump();
        return;
    }
}

std::string dump_stable(const ordered_json& j) {
    std::string out;
    write_json(j, out, 0);
    out += '\n';
    return out;
}

ordered_json real_array(const std::vector<double>& values) {
    ordered_json arr = ordered_json::array();
    for (double v : values) arr.push_back(v);
    return arr;
}

ordered_json config_to_json(const ReportConfig& c) {
    ordered_json j;
    j["segment_regex"] = c.segment_regex;
    j["fallback_blank_lines"] = c.fallback_blank_lines;
    j["min_segment_chars"] = c.min_segment_chars;
    j["lowercase"] = c.lowercase;
    j["strip_numerals"] = c.strip_numerals;
    j["stopwords"] = c.stopwords;
    j["min_count"] = c.min_count;
    j["min_presence"] = c.min_presence;
    j["linkage"] = c.linkage;
    j["axes"] = ordered_json::array({c.axis_x, c.axis_y});
    j["flag_fraction"] = c.flag_fraction;
    j["labels"] = c.labels;
    return j;
}

template <typename T>
const ordered_json& require(const T& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw InputError(std::string("report is missing field '") + key + "'");
    }
    return *it;
}

ReportConfig config_from_json(const ordered_json& j) {
    ReportConfig c;
    c.segment_regex = require(j, "segment_regex").template get<std::string>();
    c.fallback_blank_lines = require(j, "fallback_blank_lines").template get<int>();
    c.min_segment_chars = require(j, "min_segment_chars").template get<std::size_t>();
    c.lowercase = require(j, "lowercase").template get<bool>();
    c.strip_numerals = require(j, "strip_numerals").template get<bool>();
    c.stopwords = require(j, "stopwords").template get<std::vector<std::string>>();
    c.min_count = require(j, "min_count").template get<std::int64_t>();
    c.min_presence = require(j, "min_presence").template get<std::int64_t>();
    c.linkage = require(j, "linkage").template get<std::string>();
    const auto& axes = require(j, "axes");
    c.axis_x = axes.at(0).template get<int>();
    c.axis_y = axes.at(1).template get<int>();
    c.flag_fraction = require(j, "flag_fraction").template get<double>();
    c.labels = require(j, "labels").template get<std::vector<std::string>>();
    return c;
}

} // namespace

std::string to_json(const AnalysisReport& r) {
    ordered_json j;
    j["schema_id"] = r.schema_id;
    j["kind"] = r.kind;
    j["tool_version"] = r.tool_version;
    j["inputs"] = r.inputs;
    j["config"] = config_to_json(r.config);

    ordered_json segmentation;
    segmentation["segment_count"] = r.segments.size();
    ordered_json segs = ordered_json::array();
    for (const auto& s : r.segments) {
        ordered_json e;
        e["index"] = s.index;
        e["label"] = s.label;
        e["chars"] = s.chars;
        if (r.kind == "comparison") e["document"] = s.document;
        segs.push_back(std::move(e));
    }
    segmentation["segments"] = std::move(segs);
    segmentation["warnings"] = r.warnings;
    j["segmentation"] = std::move(segmentation);

    ordered_json vocab;
    vocab["before_pruning"] = r.vocab_before;
    vocab["after_pruning"] = r.vocab_after;
    j["vocabulary"] = std::move(vocab);

    ordered_json emb;
    emb["axis_count"] = r.singular_values.size();
    emb["total_inertia"] = r.total_inertia;
    emb["singular_values"] = real_array(r.singular_values);
    emb["axis_inertia_pct"] = real_array(r.axis_inertia_pct);
    ordered_json coords = ordered_json::array();
    for (std::size_t i = 0; i < r.row_coords.rows; ++i) {
        coords.push_back(real_array(r.row_coords.row(i)));
    }
    emb["row_coordinates"] = std::move(coords);
    j["embedding"] = std::move(emb);

    if (r.kind == "comparison") {
        ordered_json docs = ordered_json::array();
        for (const auto& d : r.documents) {
            ordered_json e;
            e["label"] = d.label;
            e["glyph"] = d.glyph;
            e["segment_count"] = d.segment_count;
            e["dispersion"] = d.dispersion;
            docs.push_back(std::move(e));
        }
        j["documents"] = std::move(docs);
        j["row_documents"] = r.row_doc;
        return dump_stable(j);
    }

    ordered_json clustering;
    clustering["linkage"] = r.config.linkage;
    clustering["has_inversions"] = r.has_inversions;
    ordered_json merges = ordered_json::array();
    for (const auto& m : r.merges) {
        ordered_json e;
        e["left"] = m.left_id;
        e["right"] = m.right_id;
        e["height"] = m.height;
        e["span"] = ordered_json::array({m.span_begin, m.span_end});
        merges.push_back(std::move(e));
    }
    clustering["merges"] = std::move(merges);
    j["clustering"] = std::move(clustering);

    ordered_json outliers;
    outliers["flag_fraction"] = r.outliers.flag_fraction;
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < r.outliers.centroid_distance.size(); ++i) {
        ordered_json e;
        e["label"] = i < r.segments.size() ? r.segments[i].label : std::to_string(i);
        e["centroid_distance"] = r.outliers.centroid_distance[i];
        e["planar_distance"] = i < r.planar_distance.size() ? r.planar_distance[i] : 0.0;
        e["inertia_share"] = r.outliers.inertia_share[i];
        e["discord"] = r.outliers.discord[i];
        e["rank"] = r.outliers.rank[i];
        e["flagged"] = static_cast<bool>(r.outliers.flagged[i]);
        rows.push_back(std::move(e));
    }
    outliers["rows"] = std::move(rows);
    j["outliers"] = std::move(outliers);

    ordered_json metrics = ordered_json::array();
    for (std::size_t i = 0; i < r.metrics.size(); ++i) {
        const auto& m = r.metrics[i];
        ordered_json e;
        e["label"] = i < r.segments.size() ? r.segments[i].label : std::to_string(i);
        e["valid"] = m.valid;
        if (m.valid) {
            e["word_count"] = m.word_count;
            e["sentence_count"] = m.sentence_count;
            e["syllable_count"] = m.syllable_count;
            e["flesch_reading_ease"] = m.flesch_reading_ease;
        } else {
            e["error"] = m.error;
        }
        metrics.push_back(std::move(e));
    }
    j["metrics"] = std::move(metrics);

    return dump_stable(j);
}

AnalysisReport report_from_json(std::string_view text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("cannot parse report JSON: ") + e.what());
    }
    try {
        AnalysisReport r;
        r.schema_id = require(j, "schema_id").get<std::string>();
        r.kind = require(j, "kind").get<std::string>();
        r.tool_version = require(j, "tool_version").get<std::string>();
        r.inputs = require(j, "inputs").get<std::vector<std::string>>();
        r.config = config_from_json(require(j, "config"));

        const auto& segmentation = require(j, "segmentation");
        for (const auto& e : require(segmentation, "segments")) {
            SegmentSummary s;
            s.index = require(e, "index").get<std::size_t>();
            s.label = require(e, "label").get<std::string>();
            s.chars = require(e, "chars").get<std::size_t>();
            if (e.contains("document")) s.document = e["document"].get<std::string>();
            r.segments.push_back(std::move(s));
        }
        r.warnings = require(segmentation, "warnings").get<std::vector<std::string>>();

        const auto& vocab = require(j, "vocabulary");
        r.vocab_before = require(vocab, "before_pruning").get<std::size_t>();
        r.vocab_after = require(vocab, "after_pruning").get<std::size_t>();

        const auto& emb = require(j, "embedding");
        r.total_inertia = require(emb, "total_inertia").get<double>();
        r.singular_values = require(emb, "singular_values").get<std::vector<double>>();
        r.axis_inertia_pct = require(emb, "axis_inertia_pct").get<std::vector<double>>();
        const auto& coords = require(emb, "row_coordinates");
        const std::size_t nrows = coords.size();
        const std::size_t ncols = nrows > 0 ? coords.at(0).size() : 0;
        r.row_coords = Mat(nrows, ncols);
        for (std::size_t i = 0; i < nrows; ++i) {
            const auto row = coords.at(i).get<std::vector<double>>();
            if (row.size() != ncols) throw InputError("ragged row_coordinates in report");
            for (std::size_t k = 0; k < ncols; ++k) r.row_coords(i, k) = row[k];
        }

        if (r.kind == "comparison") {
            for (const auto& e : require(j, "documents")) {
                DocumentSummary d;
                d.label = require(e, "label").get<std::string>();
                d.glyph = require(e, "glyph").get<std::string>();
                d.segment_count = require(e, "segment_count").get<std::size_t>();
                d.dispersion = require(e, "dispersion").get<double>();
                r.documents.push_back(std::move(d));
            }
            r.row_doc = require(j, "row_documents").get<std::vector<std::size_t>>();
            return r;
        }

        const auto& clustering = require(j, "clustering");
        r.has_inversions = require(clustering, "has_inversions").get<bool>();
        for (const auto& e : require(clustering, "merges")) {
            Merge m;
            m.left_id = require(e, "left").get<std::size_t>();
            m.right_id = require(e, "right").get<std::size_t>();
            m.height = require(e, "height").get<double>();
            const auto& span = require(e, "span");
            m.span_begin = span.at(0).get<std::size_t>();
            m.span_end = span.at(1).get<std::size_t>();
            r.merges.push_back(m);
        }

        const auto& outliers = require(j, "outliers");
        r.outliers.flag_fraction = require(outliers, "flag_fraction").get<double>();
        for (const auto& e : require(outliers, "rows")) {
            r.outliers.centroid_distance.push_back(
                require(e, "centroid_distance").get<double>());
            r.planar_distance.push_back(require(e, "planar_distance").get<double>());
            r.outliers.inertia_share.push_back(require(e, "inertia_share").get<double>());
            r.outliers.discord.push_back(require(e, "discord").get<double>());
            r.outliers.rank.push_back(require(e, "rank").get<std::size_t>());
            r.outliers.flagged.push_back(require(e, "flagged").get<bool>());
        }

        for (const auto& e : require(j, "metrics")) {
            SegmentMetrics m;
            m.valid = require(e, "valid").get<bool>();
            if (m.valid) {
                m.word_count = require(e, "word_count").get<std::size_t>();
                m.sentence_count = require(e, "sentence_count").get<std::size_t>();
                m.syllable_count = require(e, "syllable_count").get<std::size_t>();
                m.flesch_reading_ease = require(e, "flesch_reading_ease").get<double>();
            } else {
                m.error = require(e, "error").get<std::string>();
            }
            r.metrics.push_back(std::move(m));
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("report JSON has unexpected shape: ") + e.what());
    }
}

} // namespace narmap
