#include "gradsharp/metric.hpp"

#include "gradsharp/error.hpp"
#include "gradsharp/preprocess.hpp"

#include <json.hpp>

#include <cmath>
#include <numeric>

namespace gradsharp {
namespace {

double mean_magnitude_at(const GradientField& field, const SelectedGradients& sel)
{
    if (sel.entries.empty())
        throw AnalysisError(AnalysisFailure::EmptySelection);
    const auto values = field.values();
    double sum = 0.0;
    for (const GradientEntry& e : sel.entries)
        sum += std::abs(values[e.index]);
    return sum / static_cast<double>(sel.entries.size());
}

void check_same_grid(const SelectedGradients& sel, const GradientField& field)
{
    if (sel.axis != field.axis())
        throw Error("axis mismatch between selection and gradient field");
    if (sel.mask.width() != field.width() || sel.mask.height() != field.height())
        throw Error("selection and gradient field shapes differ");
}

} // namespace

DecaySet decay_rates(const SelectedGradients& selected, const GradientField& blurred)
{
    check_same_grid(selected, blurred);
    if (selected.entries.empty())
        throw AnalysisError(AnalysisFailure::EmptySelection);
    const auto values = blurred.values();
    DecaySet out{selected.axis, {}};
    out.decays.reserve(selected.entries.size());
    for (const GradientEntry& e : selected.entries) {
        const double blurred_magnitude = std::abs(values[e.index]);
        out.decays.push_back((e.magnitude - blurred_magnitude) / e.magnitude);
    }
    return out;
}

double sharpness_score(const DecaySet& decays)
{
    if (decays.decays.empty())
        throw AnalysisError(AnalysisFailure::EmptySelection, "no decay values");
    const double sum = std::accumulate(decays.decays.begin(), decays.decays.end(), 0.0);
    return 100.0 * sum / static_cast<double>(decays.decays.size());
}

std::pair<double, double> representativeness(const GrayImage& filtered, const BinaryMask& mask_lh,
                                             const SelectedGradients& sel_x, const SelectedGradients& sel_y,
                                             const MetricConfig& cfg)
{
    if (!mask_lh.same_shape(filtered))
        throw Error("image and mask shapes differ");
    if (sel_x.axis != Axis::X || sel_y.axis != Axis::Y)
        throw Error("representativeness expects X and Y selections");
    if (sel_x.entries.empty() || sel_y.entries.empty())
        throw AnalysisError(AnalysisFailure::EmptySelection);

    const int size = cfg.rep_kernel_size();
    const GrayImage heavy_x = gaussian_blur_1d(filtered, size, cfg.rep_sigma, Axis::X);
    const GrayImage heavy_y = gaussian_blur_1d(filtered, size, cfg.rep_sigma, Axis::Y);
    const GradientField gx = sobel_gradient(heavy_x, mask_lh, cfg.sobel_size, Axis::X);
    const GradientField gy = sobel_gradient(heavy_y, mask_lh, cfg.sobel_size, Axis::Y);
    check_same_grid(sel_x, gx);
    check_same_grid(sel_y, gy);
    return {mean_magnitude_at(gx, sel_x), mean_magnitude_at(gy, sel_y)};
}

AnalysisTrace analyze_traced(const GrayImage& img, const MetricConfig& cfg)
{
    validate_config(cfg);
    if (img.width() < min_analyzable_size || img.height() < min_analyzable_size)
        throw AnalysisError(AnalysisFailure::InsufficientSupport,
                            "image smaller than " + std::to_string(min_analyzable_size) + "x"
                                + std::to_string(min_analyzable_size));

    GrayImage filtered = cfg.pixel_dif_threshold > 0.0
                             ? filter_anomalous_pixels(img, AnomalyFilterParams{cfg.pixel_dif_threshold})
                             : img;
    BinaryMask mask_lh = low_high_mask(filtered, cfg.low_threshold, cfg.high_threshold);
    auto [gx, gy] = sobel_gradients(filtered, mask_lh, cfg.sobel_size);
    SelectedGradients sel_x = percentile_mask(gx, cfg.percentile_low, cfg.percentile_high);
    SelectedGradients sel_y = percentile_mask(gy, cfg.percentile_low, cfg.percentile_high);

    GrayImage blurred_x = gaussian_blur_1d(filtered, cfg.gauss_size, cfg.gauss_sigma, Axis::X);
    GrayImage blurred_y = gaussian_blur_1d(filtered, cfg.gauss_size, cfg.gauss_sigma, Axis::Y);
    // Same M_LH and the original image's percentile masks; nothing is reselected.
    GradientField bgx = sobel_gradient(blurred_x, mask_lh, cfg.sobel_size, Axis::X);
    GradientField bgy = sobel_gradient(blurred_y, mask_lh, cfg.sobel_size, Axis::Y);
    DecaySet dx = decay_rates(sel_x, bgx);
    DecaySet dy = decay_rates(sel_y, bgy);

    SharpnessReport report;
    report.s_x = sharpness_score(dx);
    report.s_y = sharpness_score(dy);
    std::tie(report.r_x, report.r_y) = representativeness(filtered, mask_lh, sel_x, sel_y, cfg);
    report.selected_count_x = sel_x.entries.size();
    report.selected_count_y = sel_y.entries.size();
    report.representative_x = report.r_x >= cfg.rep_threshold;
    report.representative_y = report.r_y >= cfg.rep_threshold;

    BinaryMask sampling_x = sel_x.mask;
    BinaryMask sampling_y = sel_y.mask;
    return AnalysisTrace{
        std::move(filtered), std::move(mask_lh),   std::move(gx),         std::move(gy),
        std::move(sel_x),    std::move(sel_y),     std::move(blurred_x),  std::move(blurred_y),
        std::move(bgx),      std::move(bgy),       std::move(sampling_x), std::move(sampling_y),
        std::move(dx),       std::move(dy),        report,
    };
}

SharpnessReport analyze(const GrayImage& img, const MetricConfig& cfg)
{
    return analyze_traced(img, cfg).report;
}

std::string report_to_json(const SharpnessReport& report, int indent)
{
    nlohmann::ordered_json obj;
    obj["s_x"] = report.s_x;
    obj["s_y"] = report.s_y;
    obj["r_x"] = report.r_x;
    obj["r_y"] = report.r_y;
    obj["selected_count_x"] = report.selected_count_x;
    obj["selected_count_y"] = report.selected_count_y;
    obj["representative_x"] = report.representative_x;
    obj["representative_y"] = report.representative_y;
    return obj.dump(indent);
}

} // namespace gradsharp
