#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "narmap/crosstab.hpp"
#include "narmap/matrix.hpp"
#include "narmap/viz.hpp"

namespace narmap {

// Euclidean embedding of segments (rows) and words (columns) obtained
// from the singular value decomposition of the standardized residual
// matrix. Distances between row_principal rows over all axes are the
// chi-squared distances between segment profiles.
struct CAEmbedding {
    std::vector<double> singular_values; // non-increasing, zeros dropped
    Mat row_principal;                   // segments x axes
    Mat col_principal;                   // words x axes
    Mat row_standard;                    // principal / sigma_k
    Mat col_standard;
    double total_inertia = 0.0;          // sum of squared singular values = chi2/n
    std::vector<double> axis_inertia_pct;
    std::vector<double> row_masses;
    std::vector<double> col_masses;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;

    std::size_t axis_count() const { return singular_values.size(); }
};

// Sign convention: each axis is flipped so that the largest-magnitude
// entry of its left singular vector is positive (first index on ties),
// which pins an otherwise arbitrary orientation. Singular values below
// 1e-12 x the largest are discarded.
CAEmbedding correspondence_analysis(const CrossTab& tab);

// sqrt( sum_j (p_ij/r_i - p_i'j/r_i')^2 / c_j ), computed straight from
// the table.
double chi2_distance(const CrossTab& tab, std::size_t i, std::size_t i_prime);

// Transition formula applied to a passive profile over the embedding's
// vocabulary. The profile must be non-negative and sum to 1 (tol 1e-9).
std::vector<double> project_supplementary_row(const CAEmbedding& emb,
                                              std::span<const double> profile);

struct FactorMapOptions {
    bool include_words = false;
    std::size_t word_limit = 20;    // highest-inertia words shown
    bool pad_missing_axes = true;   // fill absent axes with 0 instead of throwing
    std::string series = "segments";
    std::string glyph = "S";
    std::vector<bool> highlight;    // per row; may be empty
};

// Scatter model of two principal axes (1-based). Captions carry each
// axis's share of inertia.
PlotModel factor_map(const CAEmbedding& emb, int axis_x, int axis_y,
                     const FactorMapOptions& options = {});

} // namespace narmap
