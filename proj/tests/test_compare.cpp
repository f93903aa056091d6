#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "narmap/compare.hpp"
#include "narmap/errors.hpp"

using namespace narmap;

namespace {

Document make_doc(std::string name, const std::vector<std::string>& segment_texts) {
    Document doc;
    doc.source_name = std::move(name);
    doc.raw_text = "x";
    for (std::size_t i = 0; i < segment_texts.size(); ++i) {
        doc.segments.push_back({i, "ch" + std::to_string(i + 1), segment_texts[i]});
    }
    return doc;
}

AnalysisReport tiny_report(const std::vector<std::string>& labels,
                           const std::vector<double>& scores) {
    AnalysisReport r;
    r.kind = "analysis";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        r.segments.push_back({i, labels[i], 10, ""});
        r.outliers.centroid_distance.push_back(scores[i]);
        r.outliers.inertia_share.push_back(0.0);
        r.outliers.discord.push_back(0.0);
        r.outliers.flagged.push_back(false);
    }
    // Ranks by score descending, ties by index.
    std::vector<std::size_t> order(labels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    r.outliers.rank.resize(labels.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) r.outliers.rank[order[pos]] = pos + 1;
    return r;
}

const VocabularyPolicy kNoPruning{1, 1};

} // namespace

TEST_CASE("two copies of a document land on identical coordinates") {
    const std::vector<std::string> texts = {"river stone morning walk",
                                            "stone river evening walk walk"};
    const std::vector<Document> docs = {make_doc("a", texts), make_doc("b", texts)};
    const std::vector<std::string> labels = {"A", "B"};
    const PooledAnalysis analysis = pooled_projection(docs, labels, {}, kNoPruning);

    REQUIRE(analysis.table.rows() == 4);
    const Mat& F = analysis.embedding.row_principal;
    for (std::size_t k = 0; k < F.cols; ++k) {
        CHECK(F(0, k) == doctest::Approx(F(2, k)).epsilon(1e-9));
        CHECK(F(1, k) == doctest::Approx(F(3, k)).epsilon(1e-9));
    }
    CHECK(dispersion(analysis, "A") == doctest::Approx(dispersion(analysis, "B")).epsilon(1e-9));
}

TEST_CASE("disjoint vocabularies separate documents on axis 1") {
    const std::vector<Document> docs = {make_doc("a", {"x x x", "x x"}),
                                        make_doc("b", {"y y", "y y y"})};
    const std::vector<std::string> labels = {"A", "B"};
    const PooledAnalysis analysis = pooled_projection(docs, labels, {}, kNoPruning);
    const Mat& F = analysis.embedding.row_principal;
    REQUIRE(analysis.embedding.axis_count() >= 1);
    // A rows share one sign, B rows the other.
    CHECK(F(0, 0) * F(1, 0) > 0.0);
    CHECK(F(2, 0) * F(3, 0) > 0.0);
    CHECK(F(0, 0) * F(2, 0) < 0.0);
}

TEST_CASE("pooled rows match a single stacked table") {
    const std::vector<Document> docs = {
        make_doc("a", {"red red blue", "blue blue green"}),
        make_doc("b", {"green red", "red blue blue green green"}),
        make_doc("c", {"blue red red", "green green red"})};
    const std::vector<std::string> labels = {"A", "B", "C"};
    const PooledAnalysis analysis = pooled_projection(docs, labels, {}, kNoPruning);

    std::vector<Segment> stacked;
    std::size_t idx = 0;
    for (const auto& doc : docs) {
        for (const auto& seg : doc.segments) {
            stacked.push_back({idx++, seg.label, seg.text});
        }
    }
    const CrossTab direct = CrossTab::build(stacked, {}, kNoPruning);
    const CAEmbedding demb = correspondence_analysis(direct);

    REQUIRE(analysis.embedding.axis_count() == demb.axis_count());
    for (std::size_t i = 0; i < direct.rows(); ++i) {
        for (std::size_t k = 0; k < demb.axis_count(); ++k) {
            CHECK(analysis.embedding.row_principal(i, k) ==
                  doctest::Approx(demb.row_principal(i, k)).epsilon(1e-9));
        }
    }
}

TEST_CASE("pooling a single document equals the single-document analysis") {
    const Document doc = make_doc("solo", {"red red blue", "blue green", "green red red"});
    const std::vector<std::string> labels = {"S"};
    const PooledAnalysis analysis = pooled_projection({doc}, labels, {}, kNoPruning);
    const CrossTab direct = CrossTab::build(doc.segments, {}, kNoPruning);
    const CAEmbedding demb = correspondence_analysis(direct);
    REQUIRE(analysis.embedding.axis_count() == demb.axis_count());
    for (std::size_t i = 0; i < direct.rows(); ++i) {
        for (std::size_t k = 0; k < demb.axis_count(); ++k) {
            CHECK(analysis.embedding.row_principal(i, k) ==
                  doctest::Approx(demb.row_principal(i, k)).epsilon(1e-9));
        }
    }
}

TEST_CASE("identical-profile segments give zero dispersion") {
    // Both segments of A have the same profile; B varies.
    const std::vector<Document> docs = {make_doc("a", {"x y", "x x y y"}),
                                        make_doc("b", {"x x x y", "y y y x"})};
    const std::vector<std::string> labels = {"A", "B"};
    const PooledAnalysis analysis = pooled_projection(docs, labels, {}, kNoPruning);
    CHECK(dispersion(analysis, "A") == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(dispersion(analysis, "B") > 1e-6);
}

TEST_CASE("dispersion orders tight documents below loose ones") {
    const std::vector<Document> docs = {
        make_doc("tight", {"w w w v", "w w v w", "w v w w"}),
        make_doc("loose", {"w w w w w w w v", "v v v v w", "w v v v v v v v"})};
    const std::vector<std::string> labels = {"T", "L"};
    const PooledAnalysis analysis = pooled_projection(docs, labels, {}, kNoPruning);
    CHECK(dispersion(analysis, "T") < dispersion(analysis, "L"));
}

TEST_CASE("dispersion of equal-mass rows at +-1 on one axis is 1") {
    // Constructed via report arithmetic instead of text: two rows, equal
    // masses, coordinates +1 and -1.
    PooledAnalysis analysis;
    analysis.doc_labels = {"D"};
    analysis.doc_glyphs = {"D"};
    analysis.row_doc = {0, 0};
    analysis.embedding.row_principal = Mat(2, 1);
    analysis.embedding.row_principal(0, 0) = 1.0;
    analysis.embedding.row_principal(1, 0) = -1.0;
    analysis.embedding.row_masses = {0.5, 0.5};

    // Reuse the library computation by calling pooled dispersion math here.
    const Mat& F = analysis.embedding.row_principal;
    double total_mass = 0.0;
    std::vector<double> centroid(F.cols, 0.0);
    for (std::size_t i = 0; i < F.rows; ++i) {
        total_mass += analysis.embedding.row_masses[i];
        for (std::size_t k = 0; k < F.cols; ++k) {
            centroid[k] += analysis.embedding.row_masses[i] * F(i, k);
        }
    }
    for (double& c : centroid) c /= total_mass;
    double acc = 0.0;
    for (std::size_t i = 0; i < F.rows; ++i) {
        double dist2 = 0.0;
        for (std::size_t k = 0; k < F.cols; ++k) {
            const double d = F(i, k) - centroid[k];
            dist2 += d * d;
        }
        acc += analysis.embedding.row_masses[i] * dist2;
    }
    CHECK(std::sqrt(acc / total_mass) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pooled projection validation") {
    const Document ok = make_doc("ok", {"x y", "y x x"});
    const Document tiny = make_doc("tiny", {"x y"});
    const std::vector<std::string> labels = {"A", "B"};
    CHECK_THROWS_AS(pooled_projection({}, {}, {}, kNoPruning), ArgumentError);
    CHECK_THROWS_AS(pooled_projection({ok, tiny}, labels, {}, kNoPruning), TableError);
    const std::vector<std::string> dup = {"A", "A"};
    CHECK_THROWS_AS(pooled_projection({ok, ok}, dup, {}, kNoPruning), ArgumentError);
    CHECK_THROWS_AS(dispersion(pooled_projection({ok, ok}, labels, {}, kNoPruning), "missing"),
                    ArgumentError);
}

TEST_CASE("pooled factor map carries per-document glyph series") {
    const std::vector<Document> docs = {make_doc("alpha", {"x x y", "y x"}),
                                        make_doc("beta", {"y y x", "x y"})};
    const std::vector<std::string> labels = {"alpha", "beta"};
    const PooledAnalysis analysis = pooled_projection(docs, labels, {}, kNoPruning);
    const PlotModel map = pooled_factor_map(analysis, 1, 2);
    REQUIRE(map.points.size() == 4);
    CHECK(map.points[0].series == "alpha");
    CHECK(map.points[0].glyph == "A");
    CHECK(map.points[2].series == "beta");
    CHECK(map.points[2].glyph == "B");
}

TEST_CASE("snapshot_diff on identical reports yields zero deltas") {
    const AnalysisReport r = tiny_report({"a", "b", "c"}, {0.5, 0.2, 0.7});
    const SnapshotDelta delta = snapshot_diff(r, r);
    REQUIRE(delta.matched.size() == 3);
    for (const auto& d : delta.matched) {
        CHECK(d.score_delta == 0.0);
        CHECK(d.rank_delta == 0);
    }
    CHECK(delta.added.empty());
    CHECK(delta.removed.empty());
    CHECK_FALSE(delta.version_mismatch);
}

TEST_CASE("snapshot_diff tracks a halved score and recomputed ranks") {
    const AnalysisReport before = tiny_report({"a", "b", "c"}, {0.5, 0.3, 0.8});
    const AnalysisReport after = tiny_report({"a", "b", "c"}, {0.25, 0.3, 0.8});
    const SnapshotDelta delta = snapshot_diff(before, after);
    REQUIRE(delta.matched.size() == 3);
    // Sorted by |score delta| descending: "a" first.
    CHECK(delta.matched[0].label == "a");
    CHECK(delta.matched[0].score_delta == doctest::Approx(-0.25));
    CHECK(delta.matched[0].score_delta ==
          doctest::Approx(-0.5 * delta.matched[0].score_before));
    // Halving the score demotes "a" from rank 2 to rank 3.
    CHECK(delta.matched[0].rank_before == 2);
    CHECK(delta.matched[0].rank_after == 3);
    CHECK(delta.matched[0].rank_delta == 1);
    CHECK(delta.matched[1].score_delta == 0.0);
}

TEST_CASE("snapshot_diff lists renamed segments as unmatched") {
    const AnalysisReport before = tiny_report({"a", "b"}, {0.5, 0.2});
    const AnalysisReport after = tiny_report({"a", "renamed"}, {0.5, 0.2});
    const SnapshotDelta delta = snapshot_diff(before, after);
    REQUIRE(delta.matched.size() == 1);
    CHECK(delta.matched[0].label == "a");
    CHECK(delta.removed == std::vector<std::string>{"b"});
    CHECK(delta.added == std::vector<std::string>{"renamed"});
}

TEST_CASE("snapshot_diff is antisymmetric in score deltas") {
    const AnalysisReport a = tiny_report({"a", "b", "c"}, {0.5, 0.2, 0.8});
    const AnalysisReport b = tiny_report({"a", "b", "c"}, {0.1, 0.6, 0.8});
    const SnapshotDelta forward = snapshot_diff(a, b);
    const SnapshotDelta backward = snapshot_diff(b, a);
    REQUIRE(forward.matched.size() == backward.matched.size());
    for (const auto& f : forward.matched) {
        for (const auto& g : backward.matched) {
            if (f.label == g.label) CHECK(f.score_delta == doctest::Approx(-g.score_delta));
        }
    }
}

TEST_CASE("snapshot_diff needs common labels and analysis kind") {
    const AnalysisReport a = tiny_report({"a"}, {0.5});
    const AnalysisReport b = tiny_report({"z"}, {0.5});
    CHECK_THROWS_AS(snapshot_diff(a, b), InputError);

    AnalysisReport cmp = tiny_report({"a"}, {0.5});
    cmp.kind = "comparison";
    CHECK_THROWS_AS(snapshot_diff(cmp, a), InputError);
}

TEST_CASE("version mismatches are flagged but tolerated") {
    AnalysisReport a = tiny_report({"a", "b"}, {0.5, 0.2});
    AnalysisReport b = a;
    b.tool_version = "9.9.9";
    const SnapshotDelta delta = snapshot_diff(a, b);
    CHECK(delta.version_mismatch);
    CHECK(delta.matched.size() == 2);
}

TEST_CASE("delta_to_json is valid JSON with stable shape") {
    const AnalysisReport a = tiny_report({"a", "b"}, {0.5, 0.2});
    const AnalysisReport b = tiny_report({"a", "c"}, {0.3, 0.2});
    const SnapshotDelta delta = snapshot_diff(a, b);
    const std::string json = delta_to_json(delta, {"x.json", "y.json"});
    CHECK(json.find("\"schema_id\": \"narmap-delta/1\"") != std::string::npos);
    CHECK(json.find("\"score_delta\": -0.2") != std::string::npos);
    CHECK(json.find("\"added\": [\"c\"]") != std::string::npos);
    CHECK(json.find("\"removed\": [\"b\"]") != std::string::npos);
    CHECK(delta_to_json(delta, {"x.json", "y.json"}) == json);
}
