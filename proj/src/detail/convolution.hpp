#pragma once

#include "gradsharp/image.hpp"

#include <span>
#include <vector>

namespace gradsharp::detail {

// out(p) = sum_k taps[k + r] * in(p + k * e_axis), with reflect padding.
// `taps` must have odd length.
std::vector<double> correlate_axis(std::span<const double> in, int width, int height,
                                   std::span<const double> taps, Axis axis);

// Full 2-D convolution (kernel flipped) with reflect padding. Kernel dims odd.
std::vector<double> convolve_2d(std::span<const double> in, int width, int height,
                                std::span<const double> kernel, int kernel_width, int kernel_height);

} // namespace gradsharp::detail
