#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gradsharp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Decode/encode failures (unreadable file, unsupported format, zero size).
class ImageIoError : public Error {
public:
    using Error::Error;
};

// One message per violated MetricConfig invariant.
class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<std::string> violations);

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

enum class AnalysisFailure {
    InsufficientSupport,
    DegenerateDistribution,
    EmptySelection,
};

const char* to_string(AnalysisFailure failure) noexcept;

// Raised when image content cannot support a sharpness reading.
class AnalysisError : public Error {
public:
    explicit AnalysisError(AnalysisFailure failure);
    AnalysisError(AnalysisFailure failure, const std::string& detail);

    AnalysisFailure failure() const noexcept { return failure_; }

private:
    AnalysisFailure failure_;
};

} // namespace gradsharp
