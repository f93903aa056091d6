#pragma once

#include <cstddef>
#include <vector>

namespace narmap {

// Minimal dense row-major matrix of doubles. Keeps linear-algebra
// backends out of the public interface.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Mat() = default;
    Mat(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    std::vector<double> row(std::size_t i) const {
        return std::vector<double>(data.begin() + static_cast<std::ptrdiff_t>(i * cols),
                                   data.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols));
    }
};

} // namespace narmap
