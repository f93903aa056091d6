#include "narmap/crosstab.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "narmap/errors.hpp"
#include "narmap/unicode.hpp"

namespace narmap {

std::vector<std::string> tokenize(std::string_view text, const TokenRules& rules) {
    std::u32string cps;
    cps.reserve(text.size());
    {
        std::size_t pos = 0;
        char32_t cp = 0;
        while (utf8_next(text, pos, cp)) cps.push_back(cp);
    }

    std::vector<std::string> tokens;
    std::string current;
    bool has_digit = false;

    auto flush = [&]() {
        if (current.empty()) return;
        if (!(rules.strip_numerals && has_digit) &&
            !(rules.stopwords && rules.stopwords->count(current) > 0)) {
            tokens.push_back(current);
        }
        current.clear();
        has_digit = false;
    };

    for (std::size_t i = 0; i < cps.size(); ++i) {
        const char32_t cp = cps[i];
        if (is_word_letter(cp) || is_ascii_digit(cp)) {
            append_utf8(current, rules.lowercase ? fold_lower(cp) : cp);
            if (is_ascii_digit(cp)) has_digit = true;
        } else if (is_apostrophe(cp) && !current.empty() && i + 1 < cps.size() &&
                   (is_word_letter(cps[i + 1]) || is_ascii_digit(cps[i + 1]))) {
            current.push_back('\'');
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

std::vector<std::string> tokenize(const Segment& segment, const TokenRules& rules) {
    return tokenize(std::string_view(segment.text), rules);
}

void CrossTab::finalize() {
    const std::size_t nr = row_labels_.size();
    const std::size_t nc = col_labels_.size();
    grand_total_ = 0;
    std::vector<std::int64_t> row_sums(nr, 0), col_sums(nc, 0);
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            const std::int64_t v = counts_[i * nc + j];
            if (v < 0) throw TableError("negative count in contingency table");
            row_sums[i] += v;
            col_sums[j] += v;
            grand_total_ += v;
        }
    }
    if (grand_total_ <= 0) throw TableError("contingency table has zero grand total");
    for (std::size_t i = 0; i < nr; ++i) {
        if (row_sums[i] == 0) {
            throw TableError("all-zero row for segment '" + row_labels_[i] + "'");
        }
    }
    for (std::size_t j = 0; j < nc; ++j) {
        if (col_sums[j] == 0) {
            throw TableError("all-zero column for word '" + col_labels_[j] + "'");
        }
    }
    row_masses_.resize(nr);
    col_masses_.resize(nc);
    for (std::size_t i = 0; i < nr; ++i) {
        row_masses_[i] = static_cast<double>(row_sums[i]) / static_cast<double>(grand_total_);
    }
    for (std::size_t j = 0; j < nc; ++j) {
        col_masses_[j] = static_cast<double>(col_sums[j]) / static_cast<double>(grand_total_);
    }
}

CrossTab CrossTab::build(const std::vector<Segment>& segments,
                         const TokenRules& rules,
                         const VocabularyPolicy& policy) {
    if (segments.size() < 2) {
        throw TableError("need at least 2 segments to build a cross-tabulation, got " +
                         std::to_string(segments.size()));
    }
    if (policy.min_total_count < 1 || policy.min_segment_presence < 1) {
        throw ArgumentError("vocabulary policy thresholds must be >= 1");
    }

    std::vector<std::map<std::string, std::int64_t>> per_segment(segments.size());
    std::map<std::string, std::int64_t> totals;
    std::map<std::string, std::int64_t> presence;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        for (auto& tok : tokenize(segments[i], rules)) {
            auto [it, fresh] = per_segment[i].emplace(std::move(tok), 0);
            ++it->second;
            if (it->second == 1) ++presence[it->first];
            ++totals[it->first];
        }
    }

    CrossTab tab;
    tab.vocab_before_pruning_ = totals.size();
    for (const auto& [word, total] : totals) {
        if (total >= policy.min_total_count && presence[word] >= policy.min_segment_presence) {
            tab.col_labels_.push_back(word); // std::map iterates lexicographically
        }
    }
    if (tab.col_labels_.empty()) {
        throw TableError("vocabulary is empty after pruning (min_total_count=" +
                         std::to_string(policy.min_total_count) + ", min_segment_presence=" +
                         std::to_string(policy.min_segment_presence) + ")");
    }

    const std::size_t nc = tab.col_labels_.size();
    tab.counts_.assign(segments.size() * nc, 0);
    for (const auto& seg : segments) tab.row_labels_.push_back(seg.label);

    std::vector<std::string> empty_rows;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        std::int64_t row_sum = 0;
        for (std::size_t j = 0; j < nc; ++j) {
            auto it = per_segment[i].find(tab.col_labels_[j]);
            if (it != per_segment[i].end()) {
                tab.counts_[i * nc + j] = it->second;
                row_sum += it->second;
            }
        }
        if (row_sum == 0) empty_rows.push_back(segments[i].label);
    }
    if (!empty_rows.empty()) {
        std::string msg = "segments with no vocabulary words after pruning:";
        for (const auto& label : empty_rows) msg += " '" + label + "'";
        throw TableError(msg);
    }

    tab.finalize();
    return tab;
}

CrossTab CrossTab::from_counts(const std::vector<std::vector<std::int64_t>>& counts,
                               std::vector<std::string> row_labels,
                               std::vector<std::string> col_labels) {
    if (counts.size() < 2) {
        throw TableError("need at least 2 rows, got " + std::to_string(counts.size()));
    }
    const std::size_t nc = counts.front().size();
    if (nc == 0) throw TableError("table has no columns");
    for (const auto& row : counts) {
        if (row.size() != nc) throw TableError("ragged count matrix");
    }
    if (row_labels.size() != counts.size() || col_labels.size() != nc) {
        throw TableError("label counts do not match table dimensions");
    }

    CrossTab tab;
    tab.row_labels_ = std::move(row_labels);
    tab.col_labels_ = std::move(col_labels);
    tab.vocab_before_pruning_ = nc;
    tab.counts_.reserve(counts.size() * nc);
    for (const auto& row : counts) {
        tab.counts_.insert(tab.counts_.end(), row.begin(), row.end());
    }
    tab.finalize();
    return tab;
}

std::vector<double> CrossTab::profile(std::size_t i) const {
    if (i >= rows()) {
        throw ArgumentError("row index " + std::to_string(i) + " out of range (rows=" +
                            std::to_string(rows()) + ")");
    }
    std::int64_t row_sum = 0;
    for (std::size_t j = 0; j < cols(); ++j) row_sum += count(i, j);
    std::vector<double> p(cols());
    for (std::size_t j = 0; j < cols(); ++j) {
        p[j] = static_cast<double>(count(i, j)) / static_cast<double>(row_sum);
    }
    return p;
}

std::string CrossTab::to_tsv() const {
    auto sanitize = [](std::string s) {
        std::replace(s.begin(), s.end(), '\t', ' ');
        return s;
    };
    std::ostringstream out;
    out << "segment";
    for (const auto& w : col_labels_) out << '\t' << sanitize(w);
    out << '\n';
    for (std::size_t i = 0; i < rows(); ++i) {
        out << sanitize(row_labels_[i]);
        for (std::size_t j = 0; j < cols(); ++j) out << '\t' << count(i, j);
        out << '\n';
    }
    return out.str();
}

} // namespace narmap
