// narmap: manuscript structure analysis on the command line.
//
//   narmap analyze draft.txt --out out/
//   narmap compare a.txt b.txt --labels A,B --out out/
//   narmap diff before/report.json after/report.json --out out/

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "narmap/ca.hpp"
#include "narmap/cluster.hpp"
#include "narmap/compare.hpp"
#include "narmap/crosstab.hpp"
#include "narmap/errors.hpp"
#include "narmap/ingest.hpp"
#include "narmap/metrics.hpp"
#include "narmap/outliers.hpp"
#include "narmap/report.hpp"
#include "narmap/unicode.hpp"
#include "narmap/viz.hpp"

namespace fs = std::filesystem;
using namespace narmap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
    std::string out_dir = "out";
    std::string segment_regex = default_boundary_pattern();
    int fallback_blank_lines = 2;
    std::size_t min_segment_chars = 1;
    std::string stopwords_file;
    std::int64_t min_count = 2;
    std::int64_t min_presence = 1;
    std::string axes = "1,2";
};

struct AnalyzeOptions : CommonOptions {
    std::string input;
    std::string linkage = "complete";
    double flag_fraction = 0.1;
};

struct CompareOptions : CommonOptions {
    std::vector<std::string> inputs;
    std::string labels_csv;
};

struct DiffOptions {
    std::string report_a;
    std::string report_b;
    std::string out_dir = "out";
};

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ',')) parts.push_back(item);
    return parts;
}

std::pair<int, int> parse_axes(const std::string& arg) {
    const auto parts = split_csv(arg);
    if (parts.size() != 2) {
        throw ArgumentError("--axes expects two comma-separated indices, e.g. 1,2");
    }
    try {
        const int ax = std::stoi(parts[0]);
        const int ay = std::stoi(parts[1]);
        if (ax < 1 || ay < 1) throw ArgumentError("axis indices are 1-based");
        return {ax, ay};
    } catch (const std::logic_error&) {
        throw ArgumentError("--axes expects two comma-separated indices, e.g. 1,2");
    }
}

std::vector<std::string> load_stopwords(const std::string& path, bool lowercase) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open stopword file: " + path);
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string word;
        for (char c : line) {
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            word.push_back(lowercase ? static_cast<char>(std::tolower(static_cast<unsigned char>(c)))
                                     : c);
        }
        if (!word.empty()) words.push_back(word);
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    return words;
}

void write_file(const fs::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::size_t non_whitespace_count(const std::string& text) {
    std::size_t pos = 0, count = 0;
    char32_t cp = 0;
    while (utf8_next(text, pos, cp)) {
        if (cp > 0x7F || std::isspace(static_cast<unsigned char>(cp)) == 0) ++count;
    }
    return count;
}

SegmentationRules make_rules(const CommonOptions& opt) {
    SegmentationRules rules;
    rules.boundary_pattern = opt.segment_regex;
    rules.fallback_blank_lines = opt.fallback_blank_lines;
    rules.min_segment_chars = opt.min_segment_chars;
    return rules;
}

TokenRules make_token_rules(const CommonOptions& opt, std::vector<std::string>& stopwords_echo) {
    TokenRules rules;
    if (!opt.stopwords_file.empty()) {
        stopwords_echo = load_stopwords(opt.stopwords_file, rules.lowercase);
        rules.stopwords.emplace(stopwords_echo.begin(), stopwords_echo.end());
    }
    return rules;
}

ReportConfig make_config_echo(const CommonOptions& opt, int ax, int ay,
                              const std::vector<std::string>& stopwords) {
    ReportConfig cfg;
    cfg.segment_regex = opt.segment_regex;
    cfg.fallback_blank_lines = opt.fallback_blank_lines;
    cfg.min_segment_chars = opt.min_segment_chars;
    cfg.stopwords = stopwords;
    cfg.min_count = opt.min_count;
    cfg.min_presence = opt.min_presence;
    cfg.axis_x = ax;
    cfg.axis_y = ay;
    return cfg;
}

int run_analyze(const AnalyzeOptions& opt) {
    const auto [ax, ay] = parse_axes(opt.axes);
    if (opt.linkage != "complete" && opt.linkage != "ward") {
        throw ArgumentError("--linkage must be 'complete' or 'ward'");
    }
    if (!(opt.flag_fraction > 0.0) || opt.flag_fraction > 1.0) {
        throw ArgumentError("--flag-fraction must be in (0, 1]");
    }

    Document doc = load_document_file(opt.input);
    doc = segment_document(std::move(doc), make_rules(opt));
    for (const auto& w : doc.warnings) std::cerr << "warning: " << w << '\n';

    std::vector<std::string> stopwords_echo;
    const TokenRules token_rules = make_token_rules(opt, stopwords_echo);
    const VocabularyPolicy policy{opt.min_count, opt.min_presence};
    const CrossTab tab = CrossTab::build(doc.segments, token_rules, policy);
    const CAEmbedding emb = correspondence_analysis(tab);

    const Linkage linkage = opt.linkage == "ward" ? Linkage::ward : Linkage::complete;
    const Dendrogram dend = constrained_cluster(emb.row_principal, emb.row_masses, linkage);

    const std::vector<double> centroid_scores = centroid_distance_scores(tab);
    const DiscordReport discord = neighborhood_discord(emb.row_principal);
    const OutlierReport outliers =
        rank_outliers(centroid_scores, discord.scores, emb.row_masses, opt.flag_fraction);

    std::vector<double> planar(doc.segments.size(), 0.0);
    const std::size_t K = emb.axis_count();
    for (std::size_t i = 0; i < doc.segments.size(); ++i) {
        const double x = static_cast<std::size_t>(ax) <= K ? emb.row_principal(i, ax - 1) : 0.0;
        const double y = static_cast<std::size_t>(ay) <= K ? emb.row_principal(i, ay - 1) : 0.0;
        planar[i] = std::sqrt(x * x + y * y);
    }

    const std::vector<SegmentMetrics> metrics = per_segment_metrics(doc);

    AnalysisReport report;
    report.kind = "analysis";
    report.inputs = {fs::path(opt.input).filename().string()};
    report.config = make_config_echo(opt, ax, ay, stopwords_echo);
    report.config.linkage = opt.linkage;
    report.config.flag_fraction = opt.flag_fraction;
    for (const auto& seg : doc.segments) {
        report.segments.push_back({seg.index, seg.label, non_whitespace_count(seg.text), ""});
    }
    report.warnings = doc.warnings;
    report.vocab_before = tab.vocabulary_before_pruning();
    report.vocab_after = tab.cols();
    report.total_inertia = emb.total_inertia;
    report.singular_values = emb.singular_values;
    report.axis_inertia_pct = emb.axis_inertia_pct;
    report.row_coords = emb.row_principal;
    report.has_inversions = dend.has_inversions();
    report.merges = dend.merges;
    report.outliers = outliers;
    report.planar_distance = planar;
    report.metrics = metrics;
    if (report.has_inversions) {
        std::cerr << "warning: ward linkage produced height inversions; "
                     "the dendrogram is rendered as-is\n";
    }

    FactorMapOptions fm;
    fm.series = doc.source_name;
    fm.glyph = assign_glyphs(std::vector<std::string>{doc.source_name}).front();
    fm.highlight.assign(outliers.flagged.begin(), outliers.flagged.end());
    const PlotModel map = factor_map(emb, ax, ay, fm);

    std::vector<std::string> labels;
    for (const auto& seg : doc.segments) labels.push_back(seg.label);

    const fs::path out_dir(opt.out_dir);
    fs::create_directories(out_dir);
    write_file(out_dir / "report.json", to_json(report));
    write_file(out_dir / "factor_map.svg", render_factor_map(map));
    write_file(out_dir / "dendrogram.svg", render_dendrogram(dend, labels));
    write_file(out_dir / "metrics.svg", render_line_chart(metrics_chart(metrics, labels)));
    return kExitOk;
}

int run_compare(const CompareOptions& opt) {
    if (opt.inputs.size() < 2) {
        throw ArgumentError("compare needs at least 2 inputs");
    }
    const auto [ax, ay] = parse_axes(opt.axes);

    std::vector<std::string> labels;
    if (!opt.labels_csv.empty()) {
        labels = split_csv(opt.labels_csv);
        if (labels.size() != opt.inputs.size()) {
            throw ArgumentError("--labels count (" + std::to_string(labels.size()) +
                                ") does not match input count (" +
                                std::to_string(opt.inputs.size()) + ")");
        }
    } else {
        for (const auto& input : opt.inputs) labels.push_back(fs::path(input).stem().string());
        std::vector<std::string> sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw ArgumentError("input stems are not unique; pass explicit --labels");
        }
    }

    const SegmentationRules rules = make_rules(opt);
    std::vector<Document> docs;
    for (const auto& input : opt.inputs) {
        Document doc = segment_document(load_document_file(input), rules);
        for (const auto& w : doc.warnings) std::cerr << "warning: " << w << '\n';
        docs.push_back(std::move(doc));
    }

    std::vector<std::string> stopwords_echo;
    const TokenRules token_rules = make_token_rules(opt, stopwords_echo);
    const VocabularyPolicy policy{opt.min_count, opt.min_presence};
    const PooledAnalysis analysis = pooled_projection(docs, labels, token_rules, policy);

    AnalysisReport report;
    report.kind = "comparison";
    for (const auto& input : opt.inputs) {
        report.inputs.push_back(fs::path(input).filename().string());
    }
    report.config = make_config_echo(opt, ax, ay, stopwords_echo);
    report.config.labels = labels;
    for (std::size_t i = 0; i < analysis.table.rows(); ++i) {
        SegmentSummary s;
        s.index = i;
        s.label = analysis.table.row_labels()[i];
        const std::size_t d = analysis.row_doc[i];
        s.document = analysis.doc_labels[d];
        report.segments.push_back(std::move(s));
    }
    std::size_t row = 0;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        for (const auto& seg : docs[d].segments) {
            report.segments[row++].chars = non_whitespace_count(seg.text);
        }
    }
    report.vocab_before = analysis.table.vocabulary_before_pruning();
    report.vocab_after = analysis.table.cols();
    report.total_inertia = analysis.embedding.total_inertia;
    report.singular_values = analysis.embedding.singular_values;
    report.axis_inertia_pct = analysis.embedding.axis_inertia_pct;
    report.row_coords = analysis.embedding.row_principal;
    report.row_doc = analysis.row_doc;
    for (std::size_t d = 0; d < analysis.doc_labels.size(); ++d) {
        DocumentSummary summary;
        summary.label = analysis.doc_labels[d];
        summary.glyph = analysis.doc_glyphs[d];
        summary.segment_count = docs[d].segments.size();
        summary.dispersion = analysis.dispersion[d];
        report.documents.push_back(std::move(summary));
    }

    PlotModel map = pooled_factor_map(analysis, ax, ay);
    // Legend with the per-document dispersion table.
    std::string legend;
    for (std::size_t d = 0; d < analysis.doc_labels.size(); ++d) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.3f", analysis.dispersion[d]);
        if (d > 0) legend += "   ";
        legend += analysis.doc_glyphs[d] + "=" + analysis.doc_labels[d] +
                  " (dispersion " + buf + ")";
    }
    map.title = legend;

    const fs::path out_dir(opt.out_dir);
    fs::create_directories(out_dir);
    write_file(out_dir / "report.json", to_json(report));
    write_file(out_dir / "comparison.svg", render_factor_map(map));

    for (std::size_t d = 0; d < analysis.doc_labels.size(); ++d) {
        std::printf("%-24s segments %3zu  dispersion %.6f\n", analysis.doc_labels[d].c_str(),
                    docs[d].segments.size(), analysis.dispersion[d]);
    }
    return kExitOk;
}

int run_diff(const DiffOptions& opt) {
    const AnalysisReport before = report_from_json(read_file(opt.report_a));
    const AnalysisReport after = report_from_json(read_file(opt.report_b));
    const SnapshotDelta delta = snapshot_diff(before, after);
    if (delta.version_mismatch) {
        std::cerr << "warning: reports come from different tool or schema versions ("
                  << before.tool_version << "/" << before.schema_id << " vs "
                  << after.tool_version << "/" << after.schema_id << "); proceeding\n";
    }

    std::printf("%-28s %12s %12s %12s %7s %7s\n", "segment", "score before", "score after",
                "delta", "rank a", "rank b");
    for (const auto& d : delta.matched) {
        std::printf("%-28s %12.6f %12.6f %+12.6f %7zu %7zu\n", d.label.c_str(), d.score_before,
                    d.score_after, d.score_delta, d.rank_before, d.rank_after);
    }
    for (const auto& label : delta.added) std::printf("added:   %s\n", label.c_str());
    for (const auto& label : delta.removed) std::printf("removed: %s\n", label.c_str());

    const fs::path out_dir(opt.out_dir);
    fs::create_directories(out_dir);
    write_file(out_dir / "delta.json", delta_to_json(delta, {opt.report_a, opt.report_b}));
    return kExitOk;
}

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--out", opt.out_dir, "Output directory");
    cmd->add_option("--segment-regex", opt.segment_regex,
                    "Full-line regex marking chapter boundaries");
    cmd->add_option("--fallback-blank-lines", opt.fallback_blank_lines,
                    "Blank-line run treated as a section break when no heading matches")
        ->check(CLI::Range(2, 1000));
    cmd->add_option("--min-segment-chars", opt.min_segment_chars,
                    "Merge segments with fewer non-whitespace characters into their predecessor");
    cmd->add_option("--stopwords", opt.stopwords_file, "File with one stopword per line");
    cmd->add_option("--min-count", opt.min_count, "Minimum total count for a vocabulary word")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--min-presence", opt.min_presence,
                    "Minimum number of segments a vocabulary word must appear in")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--axes", opt.axes, "Factor map axes, e.g. 1,2");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"narmap: manuscript structure maps, dendrograms and draft diffs"};
    app.require_subcommand(1);

    AnalyzeOptions analyze_opt;
    CLI::App* analyze = app.add_subcommand("analyze", "Analyze one manuscript");
    analyze->add_option("input", analyze_opt.input, "Manuscript (.txt or .md)")->required();
    add_common_flags(analyze, analyze_opt);
    analyze->add_option("--linkage", analyze_opt.linkage, "Cluster linkage: complete or ward");
    analyze->add_option("--flag-fraction", analyze_opt.flag_fraction,
                        "Fraction of segments flagged as outliers");

    CompareOptions compare_opt;
    CLI::App* compare = app.add_subcommand("compare", "Pool several manuscripts into one map");
    compare->add_option("inputs", compare_opt.inputs, "Manuscripts (.txt or .md)")->required();
    add_common_flags(compare, compare_opt);
    compare->add_option("--labels", compare_opt.labels_csv, "Comma-separated document labels");

    DiffOptions diff_opt;
    CLI::App* diff = app.add_subcommand("diff", "Compare two analysis reports");
    diff->add_option("report_a", diff_opt.report_a, "Earlier report.json")->required();
    diff->add_option("report_b", diff_opt.report_b, "Later report.json")->required();
    diff->add_option("--out", diff_opt.out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*analyze) return run_analyze(analyze_opt);
        if (*compare) return run_compare(compare_opt);
        return run_diff(diff_opt);
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const Error& e) {
        // Input, encoding, segmentation and table errors.
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitNumerical;
    }
}
