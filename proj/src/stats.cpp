#include "gradsharp/stats.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace gradsharp {
namespace {

double axis_sigma(const BenchRecord& r, Axis axis)
{
    return axis == Axis::X ? r.degradation.blur_sigma_x : r.degradation.blur_sigma_y;
}

double axis_score(const BenchRecord& r, Axis axis)
{
    return axis == Axis::X ? r.report.s_x : r.report.s_y;
}

bool axis_representative(const BenchRecord& r, Axis axis)
{
    return axis == Axis::X ? r.report.representative_x : r.report.representative_y;
}

nlohmann::ordered_json axis_json(const AxisStats& s)
{
    nlohmann::ordered_json obj;
    obj["records"] = s.records;
    obj["spearman_rho"] = s.rho;
    auto groups = nlohmann::ordered_json::array();
    for (const SigmaGroup& g : s.groups) {
        nlohmann::ordered_json row;
        row["sigma"] = g.sigma;
        row["count"] = g.count;
        row["mean"] = g.mean;
        row["std"] = g.std;
        groups.push_back(std::move(row));
    }
    obj["per_sigma"] = std::move(groups);
    return obj;
}

} // namespace

std::vector<double> average_ranks(std::span<const double> values)
{
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]])
            ++j;
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k)
            ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        throw StatsError("spearman inputs differ in length");
    if (a.size() < 2)
        throw StatsError("no rank variation");
    const std::vector<double> ra = average_ranks(a);
    const std::vector<double> rb = average_ranks(b);
    const double n = static_cast<double>(a.size());
    const double mean = (n + 1.0) / 2.0;
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        const double da = ra[i] - mean;
        const double db = rb[i] - mean;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0)
        throw StatsError("no rank variation");
    return sab / std::sqrt(saa * sbb);
}

AxisStats correlation_stats(const std::vector<BenchRecord>& records, bool filtered, Axis axis)
{
    std::vector<double> sigmas;
    std::vector<double> scores;
    std::map<double, std::vector<double>> by_sigma;
    for (const BenchRecord& r : records) {
        if (!r.ok() || (filtered && !axis_representative(r, axis)))
            continue;
        sigmas.push_back(axis_sigma(r, axis));
        scores.push_back(axis_score(r, axis));
        by_sigma[sigmas.back()].push_back(scores.back());
    }
    if (by_sigma.size() < 3)
        throw StatsError("insufficient distinct σ levels");

    AxisStats out;
    out.axis = axis;
    out.filtered = filtered;
    out.records = scores.size();
    out.rho = spearman(scores, sigmas);
    for (const auto& [sigma, group] : by_sigma) {
        SigmaGroup g;
        g.sigma = sigma;
        g.count = group.size();
        g.mean = std::accumulate(group.begin(), group.end(), 0.0) / static_cast<double>(group.size());
        if (group.size() > 1) {
            double ss = 0.0;
            for (double v : group)
                ss += (v - g.mean) * (v - g.mean);
            g.std = std::sqrt(ss / static_cast<double>(group.size() - 1));
        }
        out.groups.push_back(g);
    }
    return out;
}

CorrelationSummary correlation_stats(const std::vector<BenchRecord>& records, bool filtered)
{
    return {correlation_stats(records, filtered, Axis::X), correlation_stats(records, filtered, Axis::Y)};
}

std::string bench_stats_json(const std::vector<BenchRecord>& records)
{
    nlohmann::ordered_json doc;
    doc["records"] = records.size();
    doc["failed"] = std::count_if(records.begin(), records.end(), [](const BenchRecord& r) { return !r.ok(); });
    for (bool filtered : {false, true}) {
        nlohmann::ordered_json block;
        for (Axis axis : {Axis::X, Axis::Y}) {
            try {
                block[to_string(axis)] = axis_json(correlation_stats(records, filtered, axis));
            } catch (const StatsError& e) {
                block[to_string(axis)] = {{"error", e.what()}};
            }
        }
        doc[filtered ? "filtered" : "unfiltered"] = std::move(block);
    }
    return doc.dump(2);
}

} // namespace gradsharp
