#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "narmap/ca.hpp"
#include "narmap/errors.hpp"
#include "narmap/outliers.hpp"

using namespace narmap;

namespace {

CrossTab random_table(std::mt19937& rng, std::size_t rows, std::size_t cols) {
    std::uniform_int_distribution<int> dist(0, 9);
    for (;;) {
        std::vector<std::vector<std::int64_t>> counts(rows, std::vector<std::int64_t>(cols));
        std::vector<std::int64_t> rs(rows, 0), cs(cols, 0);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                counts[i][j] = dist(rng);
                rs[i] += counts[i][j];
                cs[j] += counts[i][j];
            }
        }
        bool bad = false;
        for (auto v : rs) bad |= v == 0;
        for (auto v : cs) bad |= v == 0;
        if (bad) continue;
        std::vector<std::string> rl, cl;
        for (std::size_t i = 0; i < rows; ++i) rl.push_back("r" + std::to_string(i));
        for (std::size_t j = 0; j < cols; ++j) cl.push_back("c" + std::to_string(j));
        return CrossTab::from_counts(counts, rl, cl);
    }
}

} // namespace

TEST_CASE("identical rows all sit on the centroid") {
    const CrossTab tab = CrossTab::from_counts({{2, 4}, {2, 4}, {2, 4}},
                                               {"a", "b", "c"}, {"x", "y"});
    for (double s : centroid_distance_scores(tab)) CHECK(std::abs(s) < 1e-12);
}

TEST_CASE("the diagonal table scores both rows at 1") {
    const CrossTab tab = CrossTab::from_counts({{4, 0}, {0, 4}}, {"a", "b"}, {"x", "y"});
    const auto scores = centroid_distance_scores(tab);
    CHECK(scores[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(scores[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("centroid distances equal full-space row norms") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        const CrossTab tab = random_table(rng, 5, 8);
        const CAEmbedding emb = correspondence_analysis(tab);
        const auto scores = centroid_distance_scores(tab);
        for (std::size_t i = 0; i < tab.rows(); ++i) {
            double norm2 = 0.0;
            for (std::size_t k = 0; k < emb.axis_count(); ++k) {
                norm2 += emb.row_principal(i, k) * emb.row_principal(i, k);
            }
            CHECK(std::abs(scores[i] - std::sqrt(norm2)) < 1e-9);
        }

        // Row decomposition of inertia.
        double acc = 0.0;
        for (std::size_t i = 0; i < tab.rows(); ++i) {
            acc += tab.row_mass(i) * scores[i] * scores[i];
        }
        CHECK(acc == doctest::Approx(emb.total_inertia).epsilon(1e-9));
    }
}

TEST_CASE("rank_outliers flags the top fraction by centroid distance") {
    const std::vector<double> scores = {0.1, 0.9, 0.2, 0.3};
    const std::vector<double> discord = {0.0, 0.0, 0.0, 0.0};
    const std::vector<double> masses = {0.25, 0.25, 0.25, 0.25};
    const OutlierReport report = rank_outliers(scores, discord, masses, 0.25);
    CHECK(report.rank == std::vector<std::size_t>{4, 1, 3, 2});
    CHECK(report.flagged == std::vector<bool>{false, true, false, false});
    CHECK(report.flag_fraction == 0.25);
}

TEST_CASE("equal scores rank by segment index") {
    const std::vector<double> scores = {0.5, 0.5, 0.5};
    const std::vector<double> discord = {0.0, 0.0, 0.0};
    const std::vector<double> masses = {0.2, 0.3, 0.5};
    const OutlierReport report = rank_outliers(scores, discord, masses, 0.5);
    CHECK(report.rank == std::vector<std::size_t>{1, 2, 3});
    CHECK(report.flagged == std::vector<bool>{true, true, false});
}

TEST_CASE("p = 1 flags everything") {
    const std::vector<double> scores = {0.5, 0.1};
    const std::vector<double> discord = {0.0, 0.0};
    const std::vector<double> masses = {0.5, 0.5};
    const OutlierReport report = rank_outliers(scores, discord, masses, 1.0);
    CHECK(report.flagged == std::vector<bool>{true, true});
}

TEST_CASE("flag counts survive floating-point fractions") {
    // 0.1 * 30 is a hair above 3.0 in binary; ceil must still give 3.
    std::vector<double> scores(30, 0.1);
    scores[7] = 2.0;
    scores[15] = 3.0;
    scores[23] = 4.0;
    const std::vector<double> discord(30, 0.0);
    const std::vector<double> masses(30, 1.0 / 30.0);
    const OutlierReport report = rank_outliers(scores, discord, masses, 0.1);
    std::size_t flagged = 0;
    for (bool f : report.flagged) flagged += f ? 1 : 0;
    CHECK(flagged == 3);
    CHECK(report.flagged[7]);
    CHECK(report.flagged[15]);
    CHECK(report.flagged[23]);
}

TEST_CASE("the flag set is invariant under global rescaling") {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> value(0.0, 5.0);
    std::vector<double> scores(12), discord(12, 0.0), masses(12, 1.0 / 12.0);
    for (double& s : scores) s = value(rng);
    const OutlierReport base = rank_outliers(scores, discord, masses, 0.3);
    std::vector<double> scaled = scores;
    for (double& s : scaled) s *= 17.5;
    const OutlierReport stretched = rank_outliers(scaled, discord, masses, 0.3);
    CHECK(base.flagged == stretched.flagged);
    CHECK(base.rank == stretched.rank);
}

TEST_CASE("duplicated rows receive identical scores") {
    const CrossTab tab = CrossTab::from_counts({{3, 1}, {3, 1}, {0, 5}},
                                               {"a", "a2", "b"}, {"x", "y"});
    const auto scores = centroid_distance_scores(tab);
    CHECK(scores[0] == doctest::Approx(scores[1]).epsilon(1e-12));
}

TEST_CASE("inertia shares sum to one") {
    std::mt19937 rng(321);
    const CrossTab tab = random_table(rng, 6, 9);
    const auto scores = centroid_distance_scores(tab);
    const DiscordReport none{std::vector<double>(6, 0.0), std::vector<std::size_t>(6, 1)};
    const OutlierReport report = rank_outliers(scores, none.scores, tab.row_masses(), 0.1);
    double sum = 0.0;
    for (double share : report.inertia_share) sum += share;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("argument validation") {
    const std::vector<double> scores = {1.0, 2.0};
    const std::vector<double> discord = {0.0, 0.0};
    const std::vector<double> masses = {0.5, 0.5};
    CHECK_THROWS_AS(rank_outliers(scores, discord, masses, 0.0), ArgumentError);
    CHECK_THROWS_AS(rank_outliers(scores, discord, masses, 1.5), ArgumentError);
    const std::vector<double> short_discord = {0.0};
    CHECK_THROWS_AS(rank_outliers(scores, short_discord, masses, 0.5), ArgumentError);
}
