#pragma once

#include <string>

namespace gradsharp {

/// Tunable parameters of the sharpness analysis. Intensities are in
/// normalized [0,1] units so one config serves 8- and 16-bit input.
struct MetricConfig {
    double percentile_low = 98.5;
    double percentile_high = 99.5;
    int sobel_size = 5;
    int gauss_size = 5;
    double gauss_sigma = 1.0;
    int rep_scale = 3;
    double rep_sigma = 5.0;
    // Relative deviation that marks a pixel as anomalous; 0 turns the filter off.
    double pixel_dif_threshold = 0.5;
    double low_threshold = 0.0;
    double high_threshold = 1.0;
    double rep_threshold = 0.01;

    /// Taps of the representativeness blur: rep_scale * gauss_size, rounded up to odd.
    int rep_kernel_size() const noexcept;

    friend bool operator==(const MetricConfig&, const MetricConfig&) = default;
};

/// Returns cfg unchanged, or throws ConfigError listing every violated invariant.
MetricConfig validate_config(const MetricConfig& cfg);

/// Flat JSON object with the field names above. Missing fields take defaults;
/// unknown fields are rejected. The result is validated.
MetricConfig config_from_json(const std::string& text);
MetricConfig load_config(const std::string& path);
std::string config_to_json(const MetricConfig& cfg);

} // namespace gradsharp
