#include "gradsharp/bench_config.hpp"

#include "gradsharp/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace gradsharp {
namespace {

using nlohmann::json;

template <typename T>
void read(const json& obj, const char* key, T& out, std::vector<std::string>& problems)
{
    auto it = obj.find(key);
    if (it == obj.end())
        return;
    try {
        out = it->get<T>();
    } catch (const json::exception&) {
        problems.push_back(std::string("bad value for ") + key);
    }
}

} // namespace

MetricConfig BenchConfig::desk_metric()
{
    MetricConfig cfg;
    cfg.percentile_low = 99.5;
    cfg.percentile_high = 99.9;
    return cfg;
}

std::vector<SceneSpec> BenchConfig::scenes() const
{
    std::vector<SceneSpec> out;
    std::uint64_t seed = scene_seed;
    for (int n : block_sizes)
        for (double b : brightness)
            for (double c : contrast)
                out.push_back(SceneSpec{width, height, n, b, c, seed++});
    return out;
}

std::vector<DegradationSpec> BenchConfig::degradations() const
{
    const Kernel2D psf = psf_file.empty() ? default_psf() : load_psf(psf_file);
    std::vector<DegradationSpec> out;
    std::uint64_t seed = noise_seed;
    for (double sx : sigma_x)
        for (double sy : sigma_y)
            for (double noise : noise_sigma)
                out.push_back(DegradationSpec{psf, sx, sy, blur_size, noise, seed++});
    return out;
}

BenchConfig bench_config_from_json(const std::string& text, const std::string& base_dir)
{
    json obj;
    try {
        obj = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("malformed JSON: ") + e.what()});
    }
    if (!obj.is_object())
        throw ConfigError({"bench config must be a JSON object"});

    static const char* const known[] = {
        "width",   "height",      "block_sizes", "brightness", "contrast", "scene_seed", "sigma_x",
        "sigma_y", "noise_sigma", "blur_size",   "noise_seed", "psf_file", "metric",     "jobs",
    };
    std::vector<std::string> problems;
    for (const auto& [key, value] : obj.items()) {
        if (std::find(std::begin(known), std::end(known), key) == std::end(known))
            problems.push_back("unknown field " + key);
    }

    BenchConfig cfg;
    read(obj, "width", cfg.width, problems);
    read(obj, "height", cfg.height, problems);
    read(obj, "block_sizes", cfg.block_sizes, problems);
    read(obj, "brightness", cfg.brightness, problems);
    read(obj, "contrast", cfg.contrast, problems);
    read(obj, "scene_seed", cfg.scene_seed, problems);
    read(obj, "sigma_x", cfg.sigma_x, problems);
    read(obj, "sigma_y", cfg.sigma_y, problems);
    read(obj, "noise_sigma", cfg.noise_sigma, problems);
    read(obj, "blur_size", cfg.blur_size, problems);
    read(obj, "noise_seed", cfg.noise_seed, problems);
    read(obj, "psf_file", cfg.psf_file, problems);
    read(obj, "jobs", cfg.jobs, problems);

    if (auto it = obj.find("metric"); it != obj.end()) {
        if (!it->is_object()) {
            problems.emplace_back("metric must be a JSON object");
        } else {
            json merged = json::parse(config_to_json(BenchConfig::desk_metric()));
            merged.update(*it);
            try {
                cfg.metric = config_from_json(merged.dump());
            } catch (const ConfigError& e) {
                for (const auto& v : e.violations())
                    problems.push_back("metric: " + v);
            }
        }
    }

    if (cfg.width < 1 || cfg.height < 1)
        problems.emplace_back("width and height must be >= 1");
    if (cfg.block_sizes.empty() || cfg.brightness.empty() || cfg.contrast.empty())
        problems.emplace_back("scene grid is empty");
    if (cfg.sigma_x.empty() || cfg.sigma_y.empty() || cfg.noise_sigma.empty())
        problems.emplace_back("degradation grid is empty");
    for (int n : cfg.block_sizes) {
        if (n < 1 || cfg.width < 2 * n || cfg.height < 2 * n)
            problems.push_back("block size " + std::to_string(n) + " does not fit the scene");
    }
    for (const auto* list : {&cfg.sigma_x, &cfg.sigma_y, &cfg.noise_sigma}) {
        for (double v : *list) {
            if (!(v >= 0.0))
                problems.emplace_back("sigma and noise values must be >= 0");
        }
    }
    if (cfg.blur_size < 1 || cfg.blur_size % 2 == 0)
        problems.emplace_back("blur_size must be odd");

    if (!problems.empty())
        throw ConfigError(std::move(problems));
    if (!cfg.psf_file.empty()) {
        const std::filesystem::path psf(cfg.psf_file);
        if (psf.is_relative() && !base_dir.empty())
            cfg.psf_file = (std::filesystem::path(base_dir) / psf).string();
        try {
            const Kernel2D psf = load_psf(cfg.psf_file);
            if (std::abs(psf.sum() - 1.0) > 1e-9)
                throw Error("PSF kernel must sum to 1");
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw ConfigError({std::string("psf_file: ") + e.what()});
        }
    }
    return cfg;
}

BenchConfig load_bench_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError({"cannot read bench config " + path});
    std::ostringstream buf;
    buf << in.rdbuf();
    return bench_config_from_json(buf.str(), std::filesystem::path(path).parent_path().string());
}

} // namespace gradsharp
