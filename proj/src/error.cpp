#include "gradsharp/error.hpp"

namespace gradsharp {
namespace {

std::string join(const std::vector<std::string>& parts)
{
    std::string out = "invalid config: ";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += "; ";
        out += parts[i];
    }
    return out;
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : Error(join(violations)), violations_(std::move(violations))
{
}

const char* to_string(AnalysisFailure failure) noexcept
{
    switch (failure) {
    case AnalysisFailure::InsufficientSupport:
        return "insufficient gradient support";
    case AnalysisFailure::DegenerateDistribution:
        return "degenerate distribution";
    case AnalysisFailure::EmptySelection:
        return "empty selection";
    }
    return "analysis failure";
}

AnalysisError::AnalysisError(AnalysisFailure failure)
    : Error(to_string(failure)), failure_(failure)
{
}

AnalysisError::AnalysisError(AnalysisFailure failure, const std::string& detail)
    : Error(std::string(to_string(failure)) + ": " + detail), failure_(failure)
{
}

} // namespace gradsharp
