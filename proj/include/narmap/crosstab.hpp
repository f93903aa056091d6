#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "narmap/ingest.hpp"

namespace narmap {

struct TokenRules {
    bool lowercase = true;
    // Tokens containing an ASCII digit are dropped when set.
    bool strip_numerals = true;
    // Applied after case folding; entries are matched verbatim.
    std::optional<std::unordered_set<std::string>> stopwords;
};

// Tokens are maximal runs of letters/digits with internal apostrophes
// (U+2019 is normalized to '). Tokens appear in text order.
std::vector<std::string> tokenize(std::string_view text, const TokenRules& rules = {});
std::vector<std::string> tokenize(const Segment& segment, const TokenRules& rules = {});

struct VocabularyPolicy {
    std::int64_t min_total_count = 2;
    std::int64_t min_segment_presence = 1;
};

// Segments x vocabulary contingency table with marginal masses.
// Columns are sorted lexicographically; no row or column is all-zero.
class CrossTab {
public:
    // An empty table; only meaningful once assigned from build/from_counts.
    CrossTab() = default;

    static CrossTab build(const std::vector<Segment>& segments,
                          const TokenRules& rules = {},
                          const VocabularyPolicy& policy = {});

    // Direct construction from a count matrix (used for synthetic tables).
    static CrossTab from_counts(const std::vector<std::vector<std::int64_t>>& counts,
                                std::vector<std::string> row_labels,
                                std::vector<std::string> col_labels);

    std::size_t rows() const { return row_labels_.size(); }
    std::size_t cols() const { return col_labels_.size(); }
    std::int64_t count(std::size_t i, std::size_t j) const { return counts_[i * cols() + j]; }
    std::int64_t grand_total() const { return grand_total_; }

    double proportion(std::size_t i, std::size_t j) const {
        return static_cast<double>(count(i, j)) / static_cast<double>(grand_total_);
    }
    double row_mass(std::size_t i) const { return row_masses_[i]; }
    double col_mass(std::size_t j) const { return col_masses_[j]; }
    const std::vector<double>& row_masses() const { return row_masses_; }
    const std::vector<double>& col_masses() const { return col_masses_; }
    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& col_labels() const { return col_labels_; }

    // Conditional word distribution of one segment; sums to 1.
    std::vector<double> profile(std::size_t i) const;

    std::size_t vocabulary_before_pruning() const { return vocab_before_pruning_; }

    // Debug export: header row of words, one row per segment.
    std::string to_tsv() const;

private:
    void finalize();

    std::vector<std::int64_t> counts_; // row-major
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
    std::int64_t grand_total_ = 0;
    std::vector<double> row_masses_;
    std::vector<double> col_masses_;
    std::size_t vocab_before_pruning_ = 0;
};

} // namespace narmap
