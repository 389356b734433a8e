#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bsid {

// Root of all library errors. Subclasses distinguish contract violations
// (shape/parameter), content problems (schema/row/data), training failures,
// and artifact I/O so callers can map them onto exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeError : Error {
    using Error::Error;
};

struct ParamError : Error {
    using Error::Error;
};

struct SchemaError : Error {
    using Error::Error;
};

// A row failed validation against the schema. Carries the 0-based row index.
struct RowError : Error {
    RowError(std::size_t row, const std::string& what)
        : Error("row " + std::to_string(row) + ": " + what), row_index(row) {}
    std::size_t row_index;
};

struct DataError : Error {
    using Error::Error;
};

struct AmbiguityError : Error {
    using Error::Error;
};

// Training diverged (non-finite loss). Carries the epoch it happened in.
struct TrainError : Error {
    TrainError(std::size_t epoch, const std::string& what)
        : Error("epoch " + std::to_string(epoch) + ": " + what), epoch_index(epoch) {}
    std::size_t epoch_index;
};

struct ConvergenceError : Error {
    ConvergenceError(const std::string& what, double grad_norm)
        : Error(what), final_gradient_norm(grad_norm) {}
    double final_gradient_norm;
};

struct NumericalError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct VersionError : Error {
    using Error::Error;
};

struct TruncationError : Error {
    using Error::Error;
};

struct FingerprintError : Error {
    using Error::Error;
};

}  // namespace bsid
