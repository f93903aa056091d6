#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "narmap/matrix.hpp"

namespace narmap {

enum class Linkage { complete, ward };

// One agglomeration step. Cluster ids follow the usual convention:
// leaves are 0..n-1, the cluster created by merge m is n+m.
struct Merge {
    std::size_t left_id = 0;
    std::size_t right_id = 0;
    double height = 0.0;
    std::size_t span_begin = 0; // inclusive segment range of the merged cluster
    std::size_t span_end = 0;
};

struct Dendrogram {
    std::size_t leaf_count = 0;
    std::vector<Merge> merges;

    // Ward linkage can produce non-monotone heights; complete cannot.
    bool has_inversions() const;
};

// Sequence-constrained agglomerative clustering: only clusters adjacent
// in segment order may merge. points holds one row per segment in full
// embedding space; masses weight the Ward criterion. Ties go to the
// lowest left index.
Dendrogram constrained_cluster(const Mat& points, std::span<const double> masses,
                               Linkage linkage = Linkage::complete);

// Partition into k contiguous ranges by undoing the last k-1 merges.
// Ranges are inclusive and ordered.
std::vector<std::pair<std::size_t, std::size_t>> cut(const Dendrogram& dend, std::size_t k);

struct DiscordReport {
    std::vector<double> scores;      // min distance to an adjacent segment
    std::vector<std::size_t> ranks;  // 1 = most discordant
};

DiscordReport neighborhood_discord(const Mat& points);

} // namespace narmap
