#pragma once

#include "gradsharp/config.hpp"
#include "gradsharp/gradient.hpp"
#include "gradsharp/image.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace gradsharp {

/// Per-pixel relative gradient loss (|g| - |g_blur|) / |g| for one axis.
struct DecaySet {
    Axis axis;
    std::vector<double> decays;
};

struct SharpnessReport {
    double s_x = 0.0;
    double s_y = 0.0;
    double r_x = 0.0;
    double r_y = 0.0;
    std::size_t selected_count_x = 0;
    std::size_t selected_count_y = 0;
    bool representative_x = false;
    bool representative_y = false;

    friend bool operator==(const SharpnessReport&, const SharpnessReport&) = default;
};

/// Smallest width and height `analyze` accepts.
inline constexpr int min_analyzable_size = 64;

DecaySet decay_rates(const SelectedGradients& selected, const GradientField& blurred);

/// 100 x mean decay.
double sharpness_score(const DecaySet& decays);

/// Mean |gradient| over each axis' selected pixels after a heavy per-axis blur
/// (rep_kernel_size taps, rep_sigma) of `filtered`, with mask_lh applied before Sobel.
std::pair<double, double> representativeness(const GrayImage& filtered, const BinaryMask& mask_lh,
                                             const SelectedGradients& sel_x, const SelectedGradients& sel_y,
                                             const MetricConfig& cfg);

/// Every intermediate product of one analysis run.
struct AnalysisTrace {
    GrayImage filtered;
    BinaryMask mask_lh;
    GradientField gradient_x;
    GradientField gradient_y;
    SelectedGradients selected_x;
    SelectedGradients selected_y;
    GrayImage blurred_x;
    GrayImage blurred_y;
    GradientField blurred_gradient_x;
    GradientField blurred_gradient_y;
    // Masks that sampled the blurred gradients; identical to selected_*.mask.
    BinaryMask blurred_sampling_mask_x;
    BinaryMask blurred_sampling_mask_y;
    DecaySet decays_x;
    DecaySet decays_y;
    SharpnessReport report;
};

AnalysisTrace analyze_traced(const GrayImage& img, const MetricConfig& cfg);

/// Full pipeline: anomaly filter, low/high mask, Sobel, percentile selection,
/// directional blur, decay, score, representativeness.
/// Throws ConfigError for an invalid cfg and AnalysisError when the image
/// content cannot support a measurement.
SharpnessReport analyze(const GrayImage& img, const MetricConfig& cfg = {});

std::string report_to_json(const SharpnessReport& report, int indent = -1);

} // namespace gradsharp
