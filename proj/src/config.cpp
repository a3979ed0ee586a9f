#include "gradsharp/config.hpp"

#include "gradsharp/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace gradsharp {
namespace {

using nlohmann::json;

bool odd_at_least_3(int size)
{
    return size >= 3 && size % 2 == 1;
}

template <typename T>
void read_field(const json& obj, const char* name, T& field, std::vector<std::string>& problems)
{
    auto it = obj.find(name);
    if (it == obj.end())
        return;
    if constexpr (std::is_integral_v<T>) {
        if (!it->is_number_integer()) {
            problems.push_back(std::string(name) + " must be an integer");
            return;
        }
    } else {
        if (!it->is_number()) {
            problems.push_back(std::string(name) + " must be a number");
            return;
        }
    }
    field = it->get<T>();
}

} // namespace

int MetricConfig::rep_kernel_size() const noexcept
{
    const int size = rep_scale * gauss_size;
    return size % 2 == 1 ? size : size + 1;
}

MetricConfig validate_config(const MetricConfig& cfg)
{
    std::vector<std::string> problems;
    auto in_open_percent = [](double p) { return p > 0.0 && p < 100.0; };

    if (!in_open_percent(cfg.percentile_low))
        problems.emplace_back("percentile_low must lie in (0,100)");
    if (!in_open_percent(cfg.percentile_high))
        problems.emplace_back("percentile_high must lie in (0,100)");
    if (!(cfg.percentile_low < cfg.percentile_high))
        problems.emplace_back("percentile_low < percentile_high");
    if (cfg.sobel_size % 2 == 0)
        problems.emplace_back("sobel_size must be odd");
    else if (!odd_at_least_3(cfg.sobel_size))
        problems.emplace_back("sobel_size must be >= 3");
    if (cfg.gauss_size % 2 == 0)
        problems.emplace_back("gauss_size must be odd");
    else if (!odd_at_least_3(cfg.gauss_size))
        problems.emplace_back("gauss_size must be >= 3");
    if (!(cfg.gauss_sigma > 0.0) || !std::isfinite(cfg.gauss_sigma))
        problems.emplace_back("gauss_sigma must be > 0");
    if (!(cfg.rep_sigma > 0.0) || !std::isfinite(cfg.rep_sigma))
        problems.emplace_back("rep_sigma must be > 0");
    if (cfg.rep_scale < 1)
        problems.emplace_back("rep_scale must be >= 1");
    if (!(cfg.pixel_dif_threshold >= 0.0) || !std::isfinite(cfg.pixel_dif_threshold))
        problems.emplace_back("pixel_dif_threshold must be >= 0");
    if (!(cfg.low_threshold >= 0.0))
        problems.emplace_back("low_threshold must be >= 0");
    if (!(cfg.high_threshold <= 1.0))
        problems.emplace_back("high_threshold must be <= 1");
    if (!(cfg.low_threshold < cfg.high_threshold))
        problems.emplace_back("low_threshold < high_threshold");
    if (!(cfg.rep_threshold >= 0.0) || !std::isfinite(cfg.rep_threshold))
        problems.emplace_back("rep_threshold must be >= 0");

    if (!problems.empty())
        throw ConfigError(std::move(problems));
    return cfg;
}

MetricConfig config_from_json(const std::string& text)
{
    json obj;
    try {
        obj = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("malformed JSON: ") + e.what()});
    }
    if (!obj.is_object())
        throw ConfigError({"config must be a JSON object"});

    static const char* const known[] = {
        "percentile_low", "percentile_high", "sobel_size",          "gauss_size",
        "gauss_sigma",    "rep_scale",       "rep_sigma",           "pixel_dif_threshold",
        "low_threshold",  "high_threshold",  "rep_threshold",
    };
    std::vector<std::string> problems;
    for (const auto& [key, value] : obj.items()) {
        if (std::find(std::begin(known), std::end(known), key) == std::end(known))
            problems.push_back("unknown field " + key);
    }

    MetricConfig cfg;
    read_field(obj, "percentile_low", cfg.percentile_low, problems);
    read_field(obj, "percentile_high", cfg.percentile_high, problems);
    read_field(obj, "sobel_size", cfg.sobel_size, problems);
    read_field(obj, "gauss_size", cfg.gauss_size, problems);
    read_field(obj, "gauss_sigma", cfg.gauss_sigma, problems);
    read_field(obj, "rep_scale", cfg.rep_scale, problems);
    read_field(obj, "rep_sigma", cfg.rep_sigma, problems);
    read_field(obj, "pixel_dif_threshold", cfg.pixel_dif_threshold, problems);
    read_field(obj, "low_threshold", cfg.low_threshold, problems);
    read_field(obj, "high_threshold", cfg.high_threshold, problems);
    read_field(obj, "rep_threshold", cfg.rep_threshold, problems);
    if (!problems.empty())
        throw ConfigError(std::move(problems));
    return validate_config(cfg);
}

MetricConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError({"cannot read config file " + path});
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json(buf.str());
}

std::string config_to_json(const MetricConfig& cfg)
{
    json obj = {
        {"percentile_low", cfg.percentile_low},
        {"percentile_high", cfg.percentile_high},
        {"sobel_size", cfg.sobel_size},
        {"gauss_size", cfg.gauss_size},
        {"gauss_sigma", cfg.gauss_sigma},
        {"rep_scale", cfg.rep_scale},
        {"rep_sigma", cfg.rep_sigma},
        {"pixel_dif_threshold", cfg.pixel_dif_threshold},
        {"low_threshold", cfg.low_threshold},
        {"high_threshold", cfg.high_threshold},
        {"rep_threshold", cfg.rep_threshold},
    };
    return obj.dump(2);
}

} // namespace gradsharp
