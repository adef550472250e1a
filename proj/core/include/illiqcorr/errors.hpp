#pragma once

#include <stdexcept>
#include <string>

namespace illiq {

// Base class for everything thrown by this library. The two subcategories
// matter to callers that map failures to process exit codes: DataError for
// malformed or unreadable input, NumericalError for statistically degenerate
// input that parsed fine but cannot be analysed.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DataError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

// series construction
class EmptySeries : public DataError {
public:
    EmptySeries() : DataError("return series is empty") {}
};

class NonFiniteValue : public DataError {
public:
    explicit NonFiniteValue(std::size_t index)
        : DataError("non-finite return at position " + std::to_string(index)) {}
};

class AllZero : public NumericalError {
public:
    AllZero() : NumericalError("every return is zero (or below the zero threshold)") {}
};

// invalid parameters (delta, lags, levels, configs)
class InvalidSpec : public Error {
public:
    using Error::Error;
};

class InvalidLevel : public InvalidSpec {
public:
    explicit InvalidLevel(double alpha)
        : InvalidSpec("test level must lie strictly between 0 and 1, got " + std::to_string(alpha)) {}
};

class InvalidConfig : public InvalidSpec {
public:
    using InvalidSpec::InvalidSpec;
};

// kernel smoothing
class DegenerateBandwidth : public NumericalError {
public:
    explicit DegenerateBandwidth(double b)
        : NumericalError("kernel row sum underflowed to zero at bandwidth " + std::to_string(b)),
          bandwidth(b) {}
    double bandwidth;
};

class AllBandwidthsDegenerate : public NumericalError {
public:
    AllBandwidthsDegenerate()
        : NumericalError("every candidate bandwidth in the grid is degenerate") {}
};

// autocorrelations and variance plug-ins
class ZeroVariance : public NumericalError {
public:
    ZeroVariance() : NumericalError("lag-0 autocovariance is zero (constant power series)") {}
};

class CurveLengthMismatch : public NumericalError {
public:
    CurveLengthMismatch(std::size_t curve_len, std::size_t n)
        : NumericalError("nuisance curve length " + std::to_string(curve_len) +
                         " does not match series length " + std::to_string(n)) {}
};

class NonPositiveCurveMean : public NumericalError {
public:
    NonPositiveCurveMean() : NumericalError("nuisance curve mean is not strictly positive") {}
};

class TooFewNonzero : public NumericalError {
public:
    TooFewNonzero(std::size_t have, std::size_t need)
        : NumericalError("need at least " + std::to_string(need) +
                         " nonzero observations, have " + std::to_string(have)) {}
};

class LengthMismatch : public NumericalError {
public:
    LengthMismatch(std::size_t a, std::size_t b)
        : NumericalError("sequence lengths differ: " + std::to_string(a) +
                         " vs " + std::to_string(b)) {}
};

// simulation
class UnsupportedForGarch : public InvalidSpec {
public:
    UnsupportedForGarch()
        : InvalidSpec("no deterministic moment curve exists under stochastic GARCH volatility") {}
};

// file ingestion
class FileNotFound : public DataError {
public:
    explicit FileNotFound(const std::string& path) : DataError("cannot open file: " + path) {}
};

class ParseError : public DataError {
public:
    ParseError(const std::string& path, std::size_t row, const std::string& what)
        : DataError(path + ":" + std::to_string(row) + ": " + what), row(row) {}
    std::size_t row;
};

class InsufficientData : public NumericalError {
public:
    InsufficientData(std::size_t n, std::size_t need)
        : NumericalError("series of length " + std::to_string(n) +
                         " is too short, need more than " + std::to_string(need)) {}
};

}  // namespace illiq
