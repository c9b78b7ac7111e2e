#pragma once

#include <stdexcept>
#include <string>

namespace mvg {

// Bad input data: shapes, file contents, invariant violations on read.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public DataError {
public:
    using DataError::DataError;
};

class FormatError : public DataError {
public:
    using DataError::DataError;
};

// Failures that surface while computing: cut locus, non-convergence,
// graph construction that leaves a vertex without neighbors.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CutLocusError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NotSpdError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class GraphError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace mvg
