#pragma once

#include <stdexcept>
#include <string>

namespace wavesync {

// Error taxonomy. Three families map onto the CLI exit codes:
// configuration (2), data/ingestion (3), numeric/domain (4).

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Irregular or non-positive sampling interval, gaps in a timestamp column.
class SamplingError : public DataError {
public:
    explicit SamplingError(const std::string& msg) : DataError(msg) {}
};

// Series shorter than the minimum the transform supports.
class TooShort : public DataError {
public:
    explicit TooShort(const std::string& msg) : DataError(msg) {}
};

// Panel members disagree on start, step or length.
class AlignmentError : public DataError {
public:
    explicit AlignmentError(const std::string& msg) : DataError(msg) {}
};

// Duplicate or unknown series names.
class NameError : public DataError {
public:
    explicit NameError(const std::string& msg) : DataError(msg) {}
};

// A weight sequence does not cover a requested time range.
class CoverageError : public DataError {
public:
    explicit CoverageError(const std::string& msg) : DataError(msg) {}
};

class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameter outside its mathematical domain (log of non-positive data,
// wavelet center frequency too small, AR coefficient outside (-1,1), ...).
class DomainError : public NumericError {
public:
    explicit DomainError(const std::string& msg) : NumericError(msg) {}
};

// Invalid scale-grid geometry.
class ScaleError : public NumericError {
public:
    explicit ScaleError(const std::string& msg) : NumericError(msg) {}
};

// Problem size outside supported bounds (e.g. the direct transform oracle).
class SizeError : public NumericError {
public:
    explicit SizeError(const std::string& msg) : NumericError(msg) {}
};

// Degenerate input that makes a statistic undefined (zero variance, ...).
class DegenerateError : public NumericError {
public:
    explicit DegenerateError(const std::string& msg) : NumericError(msg) {}
};

} // namespace wavesync
