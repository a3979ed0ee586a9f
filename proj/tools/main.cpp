#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    using namespace gradsharp::cli;

    CLI::App app{"Direction-aware no-reference sharpness analysis"};
    app.require_subcommand(1);

    AnalyzeOptions analyze;
    auto* analyze_cmd = app.add_subcommand("analyze", "Analyze one image and print its report");
    analyze_cmd->add_option("image", analyze.image, "PNG or TIFF image")->required();
    analyze_cmd->add_option("--config", analyze.config, "MetricConfig JSON");
    analyze_cmd->add_option("--output", analyze.output, "Write the report here instead of stdout");
    analyze_cmd->add_flag("--require-representative", analyze.require_representative,
                          "Exit 2 unless the image is representative on at least one axis");
    analyze_cmd->add_option("--format", analyze.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    BatchOptions batch;
    auto* batch_cmd = app.add_subcommand("batch", "Analyze a directory or manifest of images");
    batch_cmd->add_option("input", batch.input, "Directory of images or manifest file")->required();
    batch_cmd->add_option("--config", batch.config, "MetricConfig JSON");
    batch_cmd->add_option("--output", batch.output, "Per-image CSV")->required();
    batch_cmd->add_option("--jobs", batch.jobs, "Worker threads (0 = hardware concurrency)");

    SummarizeOptions summarize;
    auto* summarize_cmd = app.add_subcommand("summarize", "Recompute the summary of a batch CSV");
    summarize_cmd->add_option("csv", summarize.csv, "CSV written by batch")->required();

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "Run the synthetic degradation benchmark");
    bench_cmd->add_option("config", bench.config, "Bench config JSON (default: built-in desk sweep)");
    bench_cmd->add_option("--output", bench.output, "Records file")->required();
    bench_cmd->add_option("--format", bench.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    bench_cmd->add_option("--stats", bench.stats, "Write stats JSON here instead of stdout");
    bench_cmd->add_option("--jobs", bench.jobs, "Worker threads (0 = hardware concurrency)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and friends exit 0; any usage error is an input error.
        return app.exit(e) == 0 ? exit_ok : exit_input_error;
    }

    if (*analyze_cmd)
        return cmd_analyze(analyze, std::cout, std::cerr);
    if (*batch_cmd)
        return cmd_batch(batch, std::cout, std::cerr);
    if (*summarize_cmd)
        return cmd_summarize(summarize, std::cout, std::cerr);
    return cmd_bench(bench, std::cout, std::cerr);
}
