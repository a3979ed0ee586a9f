#pragma once

#include "gradsharp/config.hpp"
#include "gradsharp/synth.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gradsharp {

/// Scene grid x degradation grid for a synthetic sweep.
///
/// Scenes are the product block_sizes x brightness x contrast; scene i gets
/// seed scene_seed + i. Degradations are the product sigma_x x sigma_y x
/// noise_sigma; degradation j gets seed noise_seed + j.
struct BenchConfig {
    int width = 512;
    int height = 512;
    std::vector<int> block_sizes{10, 50, 100};
    std::vector<double> brightness{0.2, 0.35};
    std::vector<double> contrast{0.3, 0.5};
    std::uint64_t scene_seed = 1;

    std::vector<double> sigma_x{0.0, 0.5, 1.0, 1.5, 2.0, 3.0};
    std::vector<double> sigma_y{0.0, 0.5, 1.0, 1.5, 2.0, 3.0};
    std::vector<double> noise_sigma{0.01};
    int blur_size = 9;
    std::uint64_t noise_seed = 1000;
    std::string psf_file; // empty: default_psf()

    // Sparse block scenes carry ~1/n strong-edge pixels, so the benchmark
    // narrows the band to stay on edge crests for n up to 100.
    MetricConfig metric = desk_metric();
    unsigned jobs = 0;

    static MetricConfig desk_metric();

    std::vector<SceneSpec> scenes() const;
    std::vector<DegradationSpec> degradations() const;
};

/// Keys as in BenchConfig; missing keys keep defaults, "metric" is a partial
/// MetricConfig object layered over desk_metric(). A relative psf_file resolves
/// against base_dir. Throws ConfigError.
BenchConfig bench_config_from_json(const std::string& text, const std::string& base_dir = {});
BenchConfig load_bench_config(const std::string& path);

} // namespace gradsharp
