#pragma once

#include "gradsharp/error.hpp"
#include "gradsharp/image.hpp"
#include "gradsharp/synth.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace gradsharp {

class StatsError : public Error {
public:
    using Error::Error;
};

/// Ranks starting at 1; ties share their average rank.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman rank correlation (Pearson on average ranks).
/// Throws StatsError("no rank variation") when either side is constant.
double spearman(std::span<const double> a, std::span<const double> b);

struct SigmaGroup {
    double sigma = 0.0;
    std::size_t count = 0;
    double mean = 0.0;
    double std = 0.0; // sample standard deviation; 0 for a single record
};

struct AxisStats {
    Axis axis = Axis::X;
    bool filtered = false;
    std::size_t records = 0;
    double rho = 0.0;
    std::vector<SigmaGroup> groups; // ascending sigma
};

/// Spearman rho between S_axis and blur_sigma_axis plus per-sigma dispersion.
/// Failed records never contribute; with `filtered`, only records flagged
/// representative on `axis` do. Needs at least three distinct sigma levels.
AxisStats correlation_stats(const std::vector<BenchRecord>& records, bool filtered, Axis axis);

struct CorrelationSummary {
    AxisStats x;
    AxisStats y;
};

CorrelationSummary correlation_stats(const std::vector<BenchRecord>& records, bool filtered);

/// Unfiltered and filtered statistics for both axes as one JSON document.
/// A failing (filtered, axis) cell is reported as {"error": message}.
std::string bench_stats_json(const std::vector<BenchRecord>& records);

} // namespace gradsharp
