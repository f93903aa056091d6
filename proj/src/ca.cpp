#include "narmap/ca.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "narmap/errors.hpp"

namespace narmap {

namespace {

std::string axis_caption(int axis, const std::vector<double>& inertia_pct) {
    std::string caption = "Axis " + std::to_string(axis);
    if (axis >= 1 && static_cast<std::size_t>(axis) <= inertia_pct.size()) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.1f", inertia_pct[static_cast<std::size_t>(axis) - 1]);
        caption += " (" + std::string(buf) + "% of inertia)";
    } else {
        caption += " (padded)";
    }
    return caption;
}

} // namespace

CAEmbedding correspondence_analysis(const CrossTab& tab) {
    const std::size_t nr = tab.rows();
    const std::size_t nc = tab.cols();

    // Standardized residuals S_ij = (p_ij - r_i c_j) / sqrt(r_i c_j).
    Eigen::MatrixXd S(static_cast<Eigen::Index>(nr), static_cast<Eigen::Index>(nc));
    for (std::size_t i = 0; i < nr; ++i) {
        const double r = tab.row_mass(i);
        for (std::size_t j = 0; j < nc; ++j) {
            const double c = tab.col_mass(j);
            S(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                (tab.proportion(i, j) - r * c) / std::sqrt(r * c);
        }
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(S, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
        throw NumericalError("SVD did not converge on " + std::to_string(nr) + "x" +
                             std::to_string(nc) + " table");
    }
    Eigen::VectorXd sigma = svd.singularValues();
    Eigen::MatrixXd U = svd.matrixU();
    Eigen::MatrixXd V = svd.matrixV();

    CAEmbedding emb;
    emb.total_inertia = sigma.squaredNorm();
    emb.row_masses = tab.row_masses();
    emb.col_masses = tab.col_masses();
    emb.row_labels = tab.row_labels();
    emb.col_labels = tab.col_labels();

    const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
    const double tol = 1e-12 * sigma_max;
    std::size_t naxes = 0;
    for (Eigen::Index k = 0; k < sigma.size(); ++k) {
        if (sigma(k) > tol && sigma(k) > 0.0) ++naxes;
    }

    // Orientation: flip each axis so the largest-magnitude entry of the
    // left singular vector is positive (first index wins ties).
    for (std::size_t k = 0; k < naxes; ++k) {
        Eigen::Index imax = 0;
        double best = std::abs(U(0, static_cast<Eigen::Index>(k)));
        for (Eigen::Index i = 1; i < U.rows(); ++i) {
            const double mag = std::abs(U(i, static_cast<Eigen::Index>(k)));
            if (mag > best) {
                best = mag;
                imax = i;
            }
        }
        if (U(imax, static_cast<Eigen::Index>(k)) < 0.0) {
            U.col(static_cast<Eigen::Index>(k)) *= -1.0;
            V.col(static_cast<Eigen::Index>(k)) *= -1.0;
        }
    }

    emb.singular_values.resize(naxes);
    emb.axis_inertia_pct.resize(naxes);
    emb.row_principal = Mat(nr, naxes);
    emb.row_standard = Mat(nr, naxes);
    emb.col_principal = Mat(nc, naxes);
    emb.col_standard = Mat(nc, naxes);
    for (std::size_t k = 0; k < naxes; ++k) {
        const double s = sigma(static_cast<Eigen::Index>(k));
        emb.singular_values[k] = s;
        emb.axis_inertia_pct[k] = emb.total_inertia > 0.0 ? 100.0 * s * s / emb.total_inertia : 0.0;
        for (std::size_t i = 0; i < nr; ++i) {
            const double u = U(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
            const double std_coord = u / std::sqrt(emb.row_masses[i]);
            emb.row_standard(i, k) = std_coord;
            emb.row_principal(i, k) = s * std_coord;
        }
        for (std::size_t j = 0; j < nc; ++j) {
            const double v = V(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
            const double std_coord = v / std::sqrt(emb.col_masses[j]);
            emb.col_standard(j, k) = std_coord;
            emb.col_principal(j, k) = s * std_coord;
        }
    }
    return emb;
}

double chi2_distance(const CrossTab& tab, std::size_t i, std::size_t i_prime) {
    if (i >= tab.rows() || i_prime >= tab.rows()) {
        throw ArgumentError("row index out of range in chi2_distance");
    }
    const std::vector<double> a = tab.profile(i);
    const std::vector<double> b = tab.profile(i_prime);
    double sum = 0.0;
    for (std::size_t j = 0; j < tab.cols(); ++j) {
        const double d = a[j] - b[j];
        sum += d * d / tab.col_mass(j);
    }
    return std::sqrt(sum);
}

std::vector<double> project_supplementary_row(const CAEmbedding& emb,
                                              std::span<const double> profile) {
    if (profile.size() != emb.col_masses.size()) {
        throw ArgumentError("supplementary profile has " + std::to_string(profile.size()) +
                            " entries, vocabulary has " + std::to_string(emb.col_masses.size()));
    }
    double sum = 0.0;
    for (double p : profile) {
        if (p < 0.0) throw ArgumentError("supplementary profile has a negative entry");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ArgumentError("supplementary profile does not sum to 1");
    }

    std::vector<double> coords(emb.axis_count(), 0.0);
    for (std::size_t k = 0; k < emb.axis_count(); ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < profile.size(); ++j) {
            acc += profile[j] * emb.col_principal(j, k);
        }
        coords[k] = acc / emb.singular_values[k];
    }
    return coords;
}

PlotModel factor_map(const CAEmbedding& emb, int axis_x, int axis_y,
                     const FactorMapOptions& options) {
    if (axis_x < 1 || axis_y < 1) {
        throw ArgumentError("factor map axes are 1-based");
    }
    const std::size_t K = emb.axis_count();
    const auto ax = static_cast<std::size_t>(axis_x);
    const auto ay = static_cast<std::size_t>(axis_y);
    if (!options.pad_missing_axes && (ax > K || ay > K)) {
        throw ArgumentError("requested axis exceeds the " + std::to_string(K) +
                            " available axes");
    }
    if (!options.highlight.empty() && options.highlight.size() != emb.row_labels.size()) {
        throw ArgumentError("highlight vector does not match row count");
    }

    PlotModel model;
    model.kind = PlotKind::scatter;
    model.title = options.series;
    model.padded_axes = ax > K || ay > K;
    model.x_caption = axis_caption(axis_x, emb.axis_inertia_pct);
    model.y_caption = axis_caption(axis_y, emb.axis_inertia_pct);

    for (std::size_t i = 0; i < emb.row_labels.size(); ++i) {
        PlotPoint pt;
        pt.x = ax <= K ? emb.row_principal(i, ax - 1) : 0.0;
        pt.y = ay <= K ? emb.row_principal(i, ay - 1) : 0.0;
        pt.label = emb.row_labels[i];
        pt.glyph = options.glyph;
        pt.series = options.series;
        pt.highlight = !options.highlight.empty() && options.highlight[i];
        model.points.push_back(std::move(pt));
    }

    if (options.include_words && !emb.col_labels.empty() && K > 0) {
        // Word inertia contribution: c_j * ||G_j||^2 over all axes.
        std::vector<std::pair<double, std::size_t>> contrib;
        contrib.reserve(emb.col_labels.size());
        for (std::size_t j = 0; j < emb.col_labels.size(); ++j) {
            double norm2 = 0.0;
            for (std::size_t k = 0; k < K; ++k) {
                norm2 += emb.col_principal(j, k) * emb.col_principal(j, k);
            }
            contrib.emplace_back(emb.col_masses[j] * norm2, j);
        }
        std::sort(contrib.begin(), contrib.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        const std::size_t limit = std::min(options.word_limit, contrib.size());
        for (std::size_t t = 0; t < limit; ++t) {
            const std::size_t j = contrib[t].second;
            PlotPoint pt;
            pt.x = ax <= K ? emb.col_principal(j, ax - 1) : 0.0;
            pt.y = ay <= K ? emb.col_principal(j, ay - 1) : 0.0;
            pt.label = emb.col_labels[j];
            pt.glyph = "+";
            pt.series = "words";
            model.points.push_back(std::move(pt));
        }
    }
    return model;
}

} // namespace narmap
