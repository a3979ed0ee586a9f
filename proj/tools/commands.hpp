#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace gradsharp::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_input_error = 1,
    exit_policy_rejection = 2,
};

struct AnalyzeOptions {
    std::string image;
    std::optional<std::string> config;
    std::optional<std::string> output;
    bool require_representative = false;
    std::string format = "json";
};

struct BatchOptions {
    std::string input; // directory or manifest
    std::optional<std::string> config;
    std::string output; // CSV path
    unsigned jobs = 0;
};

struct SummarizeOptions {
    std::string csv;
};

struct BenchOptions {
    std::optional<std::string> config; // defaults to the built-in desk-scale sweep
    std::string output;                // records path
    std::string format = "csv";        // csv | jsonl
    std::optional<std::string> stats;  // stats JSON path; stdout when absent
    std::optional<unsigned> jobs;
};

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err);
int cmd_batch(const BatchOptions& opts, std::ostream& out, std::ostream& err);
int cmd_summarize(const SummarizeOptions& opts, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err);

} // namespace gradsharp::cli
