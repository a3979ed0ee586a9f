#include "commands.hpp"

#include "gradsharp/batch.hpp"
#include "gradsharp/bench_config.hpp"
#include "gradsharp/error.hpp"
#include "gradsharp/io.hpp"
#include "gradsharp/metric.hpp"
#include "gradsharp/records.hpp"
#include "gradsharp/stats.hpp"

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace gradsharp::cli {
namespace {

MetricConfig resolve_config(const std::optional<std::string>& path)
{
    return path ? load_config(*path) : validate_config(MetricConfig{});
}

// A content failure still yields a verdict: nothing measurable, not representative.
std::string failed_report_json(const std::string& error)
{
    nlohmann::ordered_json obj;
    obj["s_x"] = nullptr;
    obj["s_y"] = nullptr;
    obj["r_x"] = nullptr;
    obj["r_y"] = nullptr;
    obj["selected_count_x"] = 0;
    obj["selected_count_y"] = 0;
    obj["representative_x"] = false;
    obj["representative_y"] = false;
    obj["error"] = error;
    return obj.dump(2);
}

bool write_file(const std::string& path, const std::string& content, std::ostream& err)
{
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        err << "error: cannot write " << path << '\n';
        return false;
    }
    file << content;
    return static_cast<bool>(file);
}

} // namespace

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err)
{
    if (opts.format != "json" && opts.format != "csv") {
        err << "error: --format must be json or csv\n";
        return exit_input_error;
    }
    MetricConfig cfg;
    GrayImage img = GrayImage::filled(1, 1, 0.0);
    try {
        cfg = resolve_config(opts.config);
        img = load_image(opts.image);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }

    BatchRow row{opts.image, std::nullopt, {}};
    try {
        row.report = analyze(img, cfg);
    } catch (const AnalysisError& e) {
        row.error = e.what();
        err << "warning: " << e.what() << '\n';
    }

    std::string text;
    if (opts.format == "csv") {
        std::ostringstream csv;
        write_batch_csv(csv, {row});
        text = csv.str();
    } else {
        text = (row.report ? report_to_json(*row.report, 2) : failed_report_json(row.error)) + "\n";
    }
    if (opts.output) {
        if (!write_file(*opts.output, text, err))
            return exit_input_error;
    } else {
        out << text;
    }

    const bool representative = row.report && (row.report->representative_x || row.report->representative_y);
    if (opts.require_representative && !representative)
        return exit_policy_rejection;
    return exit_ok;
}

int cmd_batch(const BatchOptions& opts, std::ostream& out, std::ostream& err)
{
    std::vector<BatchRow> rows;
    try {
        const MetricConfig cfg = resolve_config(opts.config);
        const std::vector<std::string> inputs = collect_inputs(opts.input);
        if (inputs.empty()) {
            err << "error: no images found in " << opts.input << '\n';
            return exit_input_error;
        }
        rows = run_batch(inputs, cfg, opts.jobs);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }

    for (const BatchRow& row : rows) {
        if (!row.error.empty())
            err << "warning: " << row.path << ": " << row.error << '\n';
    }
    std::ostringstream csv;
    write_batch_csv(csv, rows);
    if (!write_file(opts.output, csv.str(), err))
        return exit_input_error;

    const BatchSummary summary = summarize(rows);
    out << summary_to_json(summary) << '\n';
    return summary.count == 0 ? exit_input_error : exit_ok;
}

int cmd_summarize(const SummarizeOptions& opts, std::ostream& out, std::ostream& err)
{
    std::ifstream in(opts.csv);
    if (!in) {
        err << "error: cannot read " << opts.csv << '\n';
        return exit_input_error;
    }
    try {
        out << summary_to_json(summarize(read_batch_csv(in))) << '\n';
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }
    return exit_ok;
}

int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err)
{
    if (opts.format != "csv" && opts.format != "jsonl") {
        err << "error: --format must be csv or jsonl\n";
        return exit_input_error;
    }
    std::vector<BenchRecord> records;
    try {
        BenchConfig bench = opts.config ? load_bench_config(*opts.config) : BenchConfig{};
        if (opts.jobs)
            bench.jobs = *opts.jobs;
        records = run_sweep(bench.scenes(), bench.degradations(), bench.metric, bench.jobs);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }

    std::ostringstream body;
    if (opts.format == "csv")
        write_bench_csv(body, records);
    else
        write_bench_jsonl(body, records);
    if (!write_file(opts.output, body.str(), err))
        return exit_input_error;

    const std::string stats = bench_stats_json(records) + "\n";
    if (opts.stats) {
        if (!write_file(*opts.stats, stats, err))
            return exit_input_error;
    } else {
        out << stats;
    }
    return exit_ok;
}

} // namespace gradsharp::cli
