#pragma once

#include "gradsharp/image.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace gradsharp {

/// Signed directional derivative raster. `support` is false wherever the
/// Sobel window touched an excluded or out-of-image pixel.
class GradientField {
public:
    GradientField(Axis axis, int width, int height, std::vector<double> values, BinaryMask support);

    Axis axis() const noexcept { return axis_; }
    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::span<const double> values() const noexcept { return values_; }
    double at(int x, int y) const noexcept { return values_[static_cast<std::size_t>(y) * width_ + x]; }
    const BinaryMask& support() const noexcept { return support_; }

private:
    Axis axis_;
    int width_;
    int height_;
    std::vector<double> values_;
    BinaryMask support_;
};

struct GradientEntry {
    std::size_t index;
    double magnitude;

    friend bool operator==(const GradientEntry&, const GradientEntry&) = default;
};

/// Strongest-gradient selection for one axis.
struct SelectedGradients {
    Axis axis;
    std::vector<GradientEntry> entries; // sorted by pixel index
    BinaryMask mask;
    double lower_value = 0.0; // magnitude at the lower percentile
    double upper_value = 0.0; // magnitude at the upper percentile
    std::size_t valid_count = 0;
};

struct SobelKernel {
    std::vector<double> smoothing;  // across the derivative axis
    std::vector<double> derivative; // along the derivative axis
    double ramp_response = 0.0;     // raw response to a unit-slope ramp
};

/// Separable Sobel factors of odd `size`: smoothing is the binomial row of
/// length size, derivative is the binomial row of length size-2 convolved
/// with [-1, 0, 1]. For size 5: [1,4,6,4,1] and [-1,-2,0,2,1].
SobelKernel sobel_kernel(int size);

/// Gradient along one axis of img * valid, scaled so a unit-slope ramp gives 1.
GradientField sobel_gradient(const GrayImage& img, const BinaryMask& valid, int size, Axis axis);

std::pair<GradientField, GradientField> sobel_gradients(const GrayImage& img, const BinaryMask& valid, int size);

/// Linear-interpolation percentile (closest-ranks) of an ascending-sorted sequence.
double percentile_sorted(std::span<const double> sorted, double percent);

/// Keeps supported pixels whose |gradient| lies within the [p_low, p_high]
/// percentile band of the supported magnitudes. Zero magnitudes are never kept.
/// Throws AnalysisError on fewer than 100 supported pixels, a flat magnitude
/// distribution, or an empty band.
SelectedGradients percentile_mask(const GradientField& field, double p_low, double p_high);

/// Normalized Gaussian taps w_k ~ exp(-k^2 / (2 sigma^2)), k in [-size/2, size/2].
std::vector<double> gaussian_kernel(int size, double sigma);

/// 1-D Gaussian blur along one axis with reflect padding.
GrayImage gaussian_blur_1d(const GrayImage& img, int size, double sigma, Axis axis);

} // namespace gradsharp
