#include "gradsharp/gradient.hpp"

#include "detail/convolution.hpp"
#include "gradsharp/error.hpp"

#include <algorithm>
#include <cmath>

namespace gradsharp {
namespace {

constexpr std::size_t min_support_pixels = 100;

std::vector<double> binomial_row(int length)
{
    std::vector<double> row{1.0};
    for (int n = 1; n < length; ++n) {
        std::vector<double> next(row.size() + 1, 0.0);
        for (std::size_t i = 0; i < row.size(); ++i) {
            next[i] += row[i];
            next[i + 1] += row[i];
        }
        row = std::move(next);
    }
    return row;
}

void check_odd_size(int size, const char* what)
{
    if (size < 3 || size % 2 == 0)
        throw Error(std::string(what) + " must be odd and >= 3");
}

// Window of radius r around each pixel lies inside the image and covers only valid pixels.
BinaryMask support_mask(const BinaryMask& valid, int r)
{
    const int w = valid.width();
    const int h = valid.height();
    // Summed-area table of invalid pixels, (w+1) x (h+1).
    std::vector<std::uint32_t> table(static_cast<std::size_t>(w + 1) * (h + 1), 0);
    for (int y = 0; y < h; ++y) {
        std::uint32_t row_sum = 0;
        for (int x = 0; x < w; ++x) {
            row_sum += valid.at(x, y) ? 0 : 1;
            table[static_cast<std::size_t>(y + 1) * (w + 1) + x + 1]
                = table[static_cast<std::size_t>(y) * (w + 1) + x + 1] + row_sum;
        }
    }
    auto at = [&](int x, int y) { return table[static_cast<std::size_t>(y) * (w + 1) + x]; };

    std::vector<std::uint8_t> bits(valid.size(), 0);
    for (int y = r; y < h - r; ++y) {
        for (int x = r; x < w - r; ++x) {
            const std::uint32_t bad = at(x + r + 1, y + r + 1) - at(x - r, y + r + 1) - at(x + r + 1, y - r)
                                      + at(x - r, y - r);
            bits[static_cast<std::size_t>(y) * w + x] = bad == 0 ? 1 : 0;
        }
    }
    return BinaryMask(w, h, std::move(bits));
}

} // namespace

GradientField::GradientField(Axis axis, int width, int height, std::vector<double> values, BinaryMask support)
    : axis_(axis), width_(width), height_(height), values_(std::move(values)), support_(std::move(support))
{
    if (values_.size() != static_cast<std::size_t>(width) * height || support_.width() != width
        || support_.height() != height)
        throw Error("gradient field shape mismatch");
}

SobelKernel sobel_kernel(int size)
{
    check_odd_size(size, "sobel_size");
    SobelKernel k;
    k.smoothing = binomial_row(size);
    const std::vector<double> inner = binomial_row(size - 2);
    k.derivative.assign(static_cast<std::size_t>(size), 0.0);
    for (std::size_t i = 0; i < inner.size(); ++i) {
        k.derivative[i] -= inner[i];
        k.derivative[i + 2] += inner[i];
    }
    double smooth_sum = 0.0;
    for (double s : k.smoothing)
        smooth_sum += s;
    const int r = size / 2;
    double slope = 0.0;
    for (int i = -r; i <= r; ++i)
        slope += k.derivative[i + r] * i;
    k.ramp_response = smooth_sum * slope;
    return k;
}

GradientField sobel_gradient(const GrayImage& img, const BinaryMask& valid, int size, Axis axis)
{
    check_odd_size(size, "sobel_size");
    if (!valid.same_shape(img))
        throw Error("image and mask shapes differ");

    const SobelKernel kernel = sobel_kernel(size);
    std::vector<double> derivative = kernel.derivative;
    for (double& d : derivative)
        d /= kernel.ramp_response;

    const GrayImage masked = apply_mask(img, valid);
    const Axis across = axis == Axis::X ? Axis::Y : Axis::X;
    const std::vector<double> smoothed
        = detail::correlate_axis(masked.samples(), img.width(), img.height(), kernel.smoothing, across);
    std::vector<double> values = detail::correlate_axis(smoothed, img.width(), img.height(), derivative, axis);
    return GradientField(axis, img.width(), img.height(), std::move(values), support_mask(valid, size / 2));
}

std::pair<GradientField, GradientField> sobel_gradients(const GrayImage& img, const BinaryMask& valid, int size)
{
    return {sobel_gradient(img, valid, size, Axis::X), sobel_gradient(img, valid, size, Axis::Y)};
}

double percentile_sorted(std::span<const double> sorted, double percent)
{
    if (sorted.empty())
        throw Error("percentile of empty sequence");
    const double rank = percent / 100.0 * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = rank - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

SelectedGradients percentile_mask(const GradientField& field, double p_low, double p_high)
{
    if (!(p_low >= 0.0 && p_high <= 100.0 && p_low < p_high))
        throw Error("percentiles must satisfy 0 <= p_low < p_high <= 100");

    const auto values = field.values();
    const BinaryMask& support = field.support();
    std::vector<double> magnitudes;
    magnitudes.reserve(support.count());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (support[i])
            magnitudes.push_back(std::abs(values[i]));
    }
    if (magnitudes.size() < min_support_pixels)
        throw AnalysisError(AnalysisFailure::InsufficientSupport,
                            std::to_string(magnitudes.size()) + " supported pixels on axis "
                                + to_string(field.axis()));

    const auto [min_it, max_it] = std::minmax_element(magnitudes.begin(), magnitudes.end());
    if (*min_it == *max_it)
        throw AnalysisError(AnalysisFailure::DegenerateDistribution,
                            std::string("all gradient magnitudes equal on axis ") + to_string(field.axis()));

    std::sort(magnitudes.begin(), magnitudes.end());
    SelectedGradients sel{field.axis(), {}, BinaryMask(field.width(), field.height(), false), 0.0, 0.0,
                          magnitudes.size()};
    sel.lower_value = percentile_sorted(magnitudes, p_low);
    sel.upper_value = percentile_sorted(magnitudes, p_high);

    std::vector<std::uint8_t> bits(values.size(), 0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!support[i])
            continue;
        const double m = std::abs(values[i]);
        if (m > 0.0 && m >= sel.lower_value && m <= sel.upper_value) {
            bits[i] = 1;
            sel.entries.push_back({i, m});
        }
    }
    if (sel.entries.empty())
        throw AnalysisError(AnalysisFailure::EmptySelection,
                            std::string("no gradients in percentile band on axis ") + to_string(field.axis()));
    sel.mask = BinaryMask(field.width(), field.height(), std::move(bits));
    return sel;
}

std::vector<double> gaussian_kernel(int size, double sigma)
{
    if (size < 1 || size % 2 == 0)
        throw Error("gaussian kernel size must be odd");
    if (!(sigma > 0.0))
        throw Error("gaussian sigma must be > 0");
    const int r = size / 2;
    std::vector<double> taps(static_cast<std::size_t>(size));
    double sum = 0.0;
    for (int k = -r; k <= r; ++k) {
        taps[k + r] = std::exp(-static_cast<double>(k) * k / (2.0 * sigma * sigma));
        sum += taps[k + r];
    }
    for (double& t : taps)
        t /= sum;
    return taps;
}

GrayImage gaussian_blur_1d(const GrayImage& img, int size, double sigma, Axis axis)
{
    const std::vector<double> taps = gaussian_kernel(size, sigma);
    return img.with_samples(detail::correlate_axis(img.samples(), img.width(), img.height(), taps, axis));
}

} // namespace gradsharp
