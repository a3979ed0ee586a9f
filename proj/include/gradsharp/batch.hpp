#pragma once

#include "gradsharp/config.hpp"
#include "gradsharp/metric.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gradsharp {

struct BatchRow {
    std::string path;
    std::optional<SharpnessReport> report; // empty when `error` is set
    std::string error;
};

struct ScoreStats {
    std::size_t count = 0;
    std::optional<double> mean;
    std::optional<double> median;
    std::optional<double> std; // sample standard deviation
};

/// Aggregates over representative images only, per axis.
struct BatchSummary {
    std::size_t rows = 0;
    std::size_t count = 0; // images with a report
    std::size_t failed = 0;
    std::size_t representative_x = 0;
    std::size_t representative_y = 0;
    ScoreStats s_x;
    ScoreStats s_y;
};

/// A directory yields its .png/.tif/.tiff files sorted by name; any other file
/// is read as a manifest with one path per line (relative paths resolve against
/// the manifest's directory; blank lines and '#' comments are skipped).
std::vector<std::string> collect_inputs(const std::string& directory_or_manifest);

/// Analyzes each path independently; failures land in the row's error column.
/// Rows come back in input order. jobs = 0 uses hardware concurrency.
std::vector<BatchRow> run_batch(const std::vector<std::string>& paths, const MetricConfig& cfg, unsigned jobs = 0);

BatchSummary summarize(const std::vector<BatchRow>& rows);

const std::vector<std::string>& batch_csv_columns();
void write_batch_csv(std::ostream& out, const std::vector<BatchRow>& rows);
std::vector<BatchRow> read_batch_csv(std::istream& in);

std::string summary_to_json(const BatchSummary& summary);

} // namespace gradsharp
