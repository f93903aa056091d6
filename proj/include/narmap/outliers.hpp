#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "narmap/crosstab.hpp"

namespace narmap {

// Two explicit views of "does not fit": a global distance to the
// manuscript's average profile and a local distance to narrative
// neighbours. They are reported side by side, never combined.
struct OutlierReport {
    std::vector<double> centroid_distance;
    std::vector<double> inertia_share;   // r_i * d_i^2 / total inertia; sums to 1
    std::vector<double> discord;
    std::vector<std::size_t> rank;       // 1 = farthest from the centroid
    std::vector<bool> flagged;           // top ceil(p * n) by centroid distance
    double flag_fraction = 0.1;
};

// Chi-squared distance from each segment's profile to the column-mass
// centroid; equals the Euclidean norm of the segment's full-space
// principal coordinates.
std::vector<double> centroid_distance_scores(const CrossTab& tab);

// Ranks by centroid distance descending (ties by segment index) and
// flags the top ceil(p * n) segments. Masses feed the inertia shares.
OutlierReport rank_outliers(std::span<const double> scores,
                            std::span<const double> discord_scores,
                            std::span<const double> masses, double p);

} // namespace narmap
