#pragma once

#include <stdexcept>
#include <string>

namespace portrisk {

// Error taxonomy. The CLI maps these onto exit codes:
//   ConfigError -> 2, DataError (and children) -> 3, anything else -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid parameters or configuration, detected before any computation.
struct ConfigError : Error {
    using Error::Error;
};

// Malformed or inconsistent input data.
struct DataError : Error {
    using Error::Error;
};

struct MalformedSeriesError : DataError {
    using DataError::DataError;
};

struct EmptyDatasetError : DataError {
    using DataError::DataError;
};

struct DimensionError : DataError {
    using DataError::DataError;
};

// Scalar argument outside its mathematical domain.
struct DomainError : DataError {
    using DataError::DataError;
};

// Matrices, labelings or registries that do not share a port universe.
struct AlignmentError : DataError {
    using DataError::DataError;
};

struct ChecksumError : DataError {
    using DataError::DataError;
};

struct UnsupportedSentenceError : DataError {
    using DataError::DataError;
};

struct ParseError : DataError {
    using DataError::DataError;
};

struct OrderingError : DataError {
    using DataError::DataError;
};

struct DataIntegrityError : DataError {
    using DataError::DataError;
};

struct RegistryError : DataError {
    using DataError::DataError;
};

struct RangeError : DataError {
    using DataError::DataError;
};

struct DegenerateLabelError : DataError {
    using DataError::DataError;
};

struct PathError : DataError {
    using DataError::DataError;
};

struct IoError : DataError {
    using DataError::DataError;
};

struct IncompleteRunError : DataError {
    using DataError::DataError;
};

// Stage-tagged wrapper used by the pipeline driver so a failure reports
// which stage died without losing the underlying category.
struct StageError : Error {
    StageError(const std::string& stage, const std::string& what, int exit_code)
        : Error("[stage " + stage + "] " + what), stage_name(stage), code(exit_code) {}
    std::string stage_name;
    int code;
};

}  // namespace portrisk
