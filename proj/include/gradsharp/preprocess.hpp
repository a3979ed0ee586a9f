#pragma once

#include "gradsharp/image.hpp"

namespace gradsharp {

struct AnomalyFilterParams {
    // Relative deviation from the 8-neighbour mean above which a pixel is replaced.
    double theta = 0.5;
};

/// Replaces interior pixels that deviate from the mean of their 8-connected
/// ring by more than theta (relative) with that mean. Every decision is made
/// against the input frame; border pixels pass through.
/// Requires an image of at least 3x3 and theta > 0.
GrayImage filter_anomalous_pixels(const GrayImage& img, const AnomalyFilterParams& params);

/// True where low < sample < high.
BinaryMask low_high_mask(const GrayImage& img, double low, double high);

} // namespace gradsharp
