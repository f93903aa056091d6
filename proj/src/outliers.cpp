#include "narmap/outliers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "narmap/errors.hpp"

namespace narmap {

std::vector<double> centroid_distance_scores(const CrossTab& tab) {
    std::vector<double> scores(tab.rows());
    for (std::size_t i = 0; i < tab.rows(); ++i) {
        const std::vector<double> p = tab.profile(i);
        double sum = 0.0;
        for (std::size_t j = 0; j < tab.cols(); ++j) {
            const double d = p[j] - tab.col_mass(j);
            sum += d * d / tab.col_mass(j);
        }
        scores[i] = std::sqrt(sum);
    }
    return scores;
}

OutlierReport rank_outliers(std::span<const double> scores,
                            std::span<const double> discord_scores,
                            std::span<const double> masses, double p) {
    const std::size_t n = scores.size();
    if (n == 0 || discord_scores.size() != n || masses.size() != n) {
        throw ArgumentError("score, discord and mass vectors must have equal non-zero length");
    }
    if (!(p > 0.0) || p > 1.0) {
        throw ArgumentError("flag fraction must be in (0, 1]");
    }

    OutlierReport report;
    report.flag_fraction = p;
    report.centroid_distance.assign(scores.begin(), scores.end());
    report.discord.assign(discord_scores.begin(), discord_scores.end());

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += masses[i] * scores[i] * scores[i];
    report.inertia_share.resize(n, 0.0);
    if (total > 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            report.inertia_share[i] = masses[i] * scores[i] * scores[i] / total;
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    report.rank.resize(n);
    for (std::size_t pos = 0; pos < n; ++pos) report.rank[order[pos]] = pos + 1;

    // ceil(p * n) guarded against p * n landing a hair above an integer.
    const auto raw = static_cast<std::size_t>(
        std::ceil(p * static_cast<double>(n) - 1e-9));
    const std::size_t flag_count = std::min(n, std::max<std::size_t>(1, raw));
    report.flagged.assign(n, false);
    for (std::size_t pos = 0; pos < flag_count; ++pos) report.flagged[order[pos]] = true;
    return report;
}

} // namespace narmap
