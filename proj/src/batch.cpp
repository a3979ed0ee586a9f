#include "gradsharp/batch.hpp"

#include "detail/csv.hpp"
#include "detail/parallel.hpp"
#include "gradsharp/error.hpp"
#include "gradsharp/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>

namespace gradsharp {
namespace {

namespace fs = std::filesystem;

bool is_image_name(const fs::path& p)
{
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".png" || ext == ".tif" || ext == ".tiff";
}

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

ScoreStats score_stats(std::vector<double> values)
{
    ScoreStats s;
    s.count = values.size();
    if (values.empty())
        return s;
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    s.mean = mean;
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    s.median = values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
    double ss = 0.0;
    for (double v : values)
        ss += (v - mean) * (v - mean);
    s.std = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    return s;
}

nlohmann::ordered_json stats_json(const ScoreStats& s)
{
    auto opt = [](const std::optional<double>& v) {
        return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
    };
    return {{"count", s.count}, {"mean", opt(s.mean)}, {"median", opt(s.median)}, {"std", opt(s.std)}};
}

double parse_number(const std::string& field, const char* column)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != field.size() || field.empty())
        throw Error(std::string("batch CSV: bad value in column ") + column + ": " + field);
    return v;
}

bool parse_bool(const std::string& field, const char* column)
{
    if (field == "true")
        return true;
    if (field == "false")
        return false;
    throw Error(std::string("batch CSV: bad boolean in column ") + column + ": " + field);
}

} // namespace

std::vector<std::string> collect_inputs(const std::string& directory_or_manifest)
{
    const fs::path root(directory_or_manifest);
    std::vector<std::string> paths;
    std::error_code ec;
    if (fs::is_directory(root, ec)) {
        for (const auto& entry : fs::directory_iterator(root)) {
            if (entry.is_regular_file() && is_image_name(entry.path()))
                paths.push_back(entry.path().string());
        }
        std::sort(paths.begin(), paths.end());
        return paths;
    }
    std::ifstream in(root);
    if (!in)
        throw Error("cannot read input " + directory_or_manifest);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line.front() == '#')
            continue;
        fs::path p(line);
        if (p.is_relative())
            p = root.parent_path() / p;
        paths.push_back(p.string());
    }
    return paths;
}

std::vector<BatchRow> run_batch(const std::vector<std::string>& paths, const MetricConfig& cfg, unsigned jobs)
{
    validate_config(cfg);
    std::vector<BatchRow> rows(paths.size());
    detail::parallel_for_index(paths.size(), jobs, [&](std::size_t i) {
        rows[i].path = paths[i];
        try {
            rows[i].report = analyze(load_image(paths[i]), cfg);
        } catch (const Error& e) {
            rows[i].error = e.what();
        }
    });
    return rows;
}

BatchSummary summarize(const std::vector<BatchRow>& rows)
{
    BatchSummary s;
    s.rows = rows.size();
    std::vector<double> sx;
    std::vector<double> sy;
    for (const BatchRow& row : rows) {
        if (!row.report) {
            ++s.failed;
            continue;
        }
        ++s.count;
        if (row.report->representative_x) {
            ++s.representative_x;
            sx.push_back(row.report->s_x);
        }
        if (row.report->representative_y) {
            ++s.representative_y;
            sy.push_back(row.report->s_y);
        }
    }
    s.s_x = score_stats(std::move(sx));
    s.s_y = score_stats(std::move(sy));
    return s;
}

const std::vector<std::string>& batch_csv_columns()
{
    static const std::vector<std::string> columns = {
        "path",  "s_x", "s_y", "r_x", "r_y", "selected_count_x", "selected_count_y", "representative_x",
        "representative_y", "error",
    };
    return columns;
}

void write_batch_csv(std::ostream& out, const std::vector<BatchRow>& rows)
{
    using detail::format_double;
    out << detail::csv_line(batch_csv_columns()) << '\n';
    for (const BatchRow& row : rows) {
        std::vector<std::string> fields{row.path};
        if (row.report) {
            const SharpnessReport& r = *row.report;
            fields.insert(fields.end(), {format_double(r.s_x), format_double(r.s_y), format_double(r.r_x),
                                         format_double(r.r_y), std::to_string(r.selected_count_x),
                                         std::to_string(r.selected_count_y), r.representative_x ? "true" : "false",
                                         r.representative_y ? "true" : "false", ""});
        } else {
            fields.insert(fields.end(), {"", "", "", "", "", "", "", "", row.error});
        }
        out << detail::csv_line(fields) << '\n';
    }
}

std::vector<BatchRow> read_batch_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || detail::parse_csv_line(line) != batch_csv_columns())
        throw Error("batch CSV: unexpected header");
    std::vector<BatchRow> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r")
            continue;
        const std::vector<std::string> f = detail::parse_csv_line(line);
        if (f.size() != batch_csv_columns().size())
            throw Error("batch CSV: wrong field count");
        BatchRow row;
        row.path = f[0];
        row.error = f[9];
        if (row.error.empty()) {
            SharpnessReport r;
            r.s_x = parse_number(f[1], "s_x");
            r.s_y = parse_number(f[2], "s_y");
            r.r_x = parse_number(f[3], "r_x");
            r.r_y = parse_number(f[4], "r_y");
            r.selected_count_x = static_cast<std::size_t>(parse_number(f[5], "selected_count_x"));
            r.selected_count_y = static_cast<std::size_t>(parse_number(f[6], "selected_count_y"));
            r.representative_x = parse_bool(f[7], "representative_x");
            r.representative_y = parse_bool(f[8], "representative_y");
            row.report = r;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string summary_to_json(const BatchSummary& s)
{
    nlohmann::ordered_json obj;
    obj["rows"] = s.rows;
    obj["count"] = s.count;
    obj["failed"] = s.failed;
    obj["representative_x"] = s.representative_x;
    obj["representative_y"] = s.representative_y;
    obj["s_x"] = stats_json(s.s_x);
    obj["s_y"] = stats_json(s.s_y);
    return obj.dump(2);
}

} // namespace gradsharp
