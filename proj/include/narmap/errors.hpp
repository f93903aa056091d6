#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace narmap {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Unreadable, empty, or unsupported input.
class InputError : public Error {
public:
    using Error::Error;
};

// Invalid UTF-8; byte_offset points at the first offending byte.
class EncodingError : public Error {
public:
    EncodingError(const std::string& what, std::size_t offset)
        : Error(what), byte_offset(offset) {}
    std::size_t byte_offset;
};

class SegmentationError : public Error {
public:
    using Error::Error;
};

// Contingency-table construction failures (too few segments, empty
// vocabulary, all-zero rows).
class TableError : public Error {
public:
    using Error::Error;
};

class MetricError : public Error {
public:
    using Error::Error;
};

// Linear-algebra failures (SVD non-convergence).
class NumericalError : public Error {
public:
    using Error::Error;
};

// Bad call arguments: out-of-range indices, mismatched dimensions,
// unnormalized profiles.
class ArgumentError : public Error {
public:
    using Error::Error;
};

} // namespace narmap
