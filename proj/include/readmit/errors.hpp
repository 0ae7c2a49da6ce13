#pragma once

#include <stdexcept>
#include <string>

namespace readmit {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input while reading an external file (CSV, TSV, JSON lines).
/// Carries enough location detail to name file, row and column in diagnostics.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// Structurally valid input that violates a data rule (duplicate keys,
/// missing annotations, single-class labels where two are required).
class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(msg) {}
};

/// A caller broke a documented precondition.
class ContractError : public Error {
public:
    explicit ContractError(const std::string& msg) : Error(msg) {}
};

/// Training diverged or was handed untrainable data.
class TrainingError : public Error {
public:
    explicit TrainingError(const std::string& msg) : Error(msg) {}
};

/// Evaluation could not produce a result (undefined AUC, empty grid).
class EvalError : public Error {
public:
    explicit EvalError(const std::string& msg) : Error(msg) {}
};

/// Requested operation is not defined for the given model family.
class UnsupportedError : public Error {
public:
    explicit UnsupportedError(const std::string& msg) : Error(msg) {}
};

}  // namespace readmit
