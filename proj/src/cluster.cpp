#include "narmap/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "narmap/errors.hpp"

namespace narmap {

namespace {

double point_distance(const Mat& points, std::size_t a, std::size_t b) {
    double sum = 0.0;
    for (std::size_t k = 0; k < points.cols; ++k) {
        const double d = points(a, k) - points(b, k);
        sum += d * d;
    }
    return std::sqrt(sum);
}

struct Cluster {
    std::size_t id;
    std::size_t lo, hi;               // inclusive segment range
    double mass;
    std::vector<double> centroid;     // mass-weighted
    std::vector<std::size_t> members;
};

double linkage_dissimilarity(const Mat& points, const Cluster& a, const Cluster& b,
                             Linkage linkage) {
    if (linkage == Linkage::complete) {
        double worst = 0.0;
        for (std::size_t p : a.members) {
            for (std::size_t q : b.members) {
                worst = std::max(worst, point_distance(points, p, q));
            }
        }
        return worst;
    }
    // Ward: mass-weighted increase in within-cluster inertia.
    double dist2 = 0.0;
    for (std::size_t k = 0; k < points.cols; ++k) {
        const double d = a.centroid[k] - b.centroid[k];
        dist2 += d * d;
    }
    return (a.mass * b.mass) / (a.mass + b.mass) * dist2;
}

} // namespace

bool Dendrogram::has_inversions() const {
    for (std::size_t m = 1; m < merges.size(); ++m) {
        if (merges[m].height < merges[m - 1].height) return true;
    }
    return false;
}

Dendrogram constrained_cluster(const Mat& points, std::span<const double> masses,
                               Linkage linkage) {
    const std::size_t n = points.rows;
    if (n < 2) {
        throw ArgumentError("constrained clustering needs at least 2 points");
    }
    if (masses.size() != n) {
        throw ArgumentError("mass count does not match point count");
    }
    for (double m : masses) {
        if (!(m > 0.0)) throw ArgumentError("masses must be positive");
    }
    for (double v : points.data) {
        if (std::isnan(v)) throw ArgumentError("NaN coordinate in clustering input");
    }

    std::vector<Cluster> active;
    active.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Cluster c;
        c.id = i;
        c.lo = c.hi = i;
        c.mass = masses[i];
        c.centroid = points.row(i);
        c.members = {i};
        active.push_back(std::move(c));
    }

    Dendrogram dend;
    dend.leaf_count = n;
    dend.merges.reserve(n - 1);

    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t best = 0;
        double best_diss = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t + 1 < active.size(); ++t) {
            const double diss = linkage_dissimilarity(points, active[t], active[t + 1], linkage);
            if (diss < best_diss) {
                best_diss = diss;
                best = t;
            }
        }

        Cluster& left = active[best];
        Cluster& right = active[best + 1];
        Merge merge;
        merge.left_id = left.id;
        merge.right_id = right.id;
        merge.height = best_diss;
        merge.span_begin = left.lo;
        merge.span_end = right.hi;
        dend.merges.push_back(merge);

        Cluster joined;
        joined.id = n + step;
        joined.lo = left.lo;
        joined.hi = right.hi;
        joined.mass = left.mass + right.mass;
        joined.centroid.resize(points.cols);
        for (std::size_t k = 0; k < points.cols; ++k) {
            joined.centroid[k] =
                (left.mass * left.centroid[k] + right.mass * right.centroid[k]) / joined.mass;
        }
        joined.members = std::move(left.members);
        joined.members.insert(joined.members.end(), right.members.begin(), right.members.end());

        active[best] = std::move(joined);
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best) + 1);
    }
    return dend;
}

std::vector<std::pair<std::size_t, std::size_t>> cut(const Dendrogram& dend, std::size_t k) {
    const std::size_t n = dend.leaf_count;
    if (k < 1 || k > n) {
        throw ArgumentError("cut count " + std::to_string(k) + " out of range 1.." +
                            std::to_string(n));
    }
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    std::vector<bool> alive(2 * n - 1, false);
    std::vector<std::pair<std::size_t, std::size_t>> span(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        alive[i] = true;
        span[i] = {i, i};
    }
    for (std::size_t m = 0; m < n - k; ++m) {
        const Merge& mg = dend.merges[m];
        alive[mg.left_id] = false;
        alive[mg.right_id] = false;
        alive[n + m] = true;
        span[n + m] = {mg.span_begin, mg.span_end};
    }
    for (std::size_t id = 0; id < 2 * n - 1; ++id) {
        if (alive[id]) ranges.push_back(span[id]);
    }
    std::sort(ranges.begin(), ranges.end());
    return ranges;
}

DiscordReport neighborhood_discord(const Mat& points) {
    const std::size_t n = points.rows;
    if (n < 2) {
        throw ArgumentError("neighborhood discord needs at least 2 points");
    }

    DiscordReport report;
    report.scores.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double score = std::numeric_limits<double>::infinity();
        if (i > 0) score = std::min(score, point_distance(points, i, i - 1));
        if (i + 1 < n) score = std::min(score, point_distance(points, i, i + 1));
        report.scores[i] = score;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (report.scores[a] != report.scores[b]) return report.scores[a] > report.scores[b];
        return a < b;
    });
    report.ranks.resize(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
        report.ranks[order[pos]] = pos + 1;
    }
    return report;
}

} // namespace narmap
