#include "gradsharp/image.hpp"

#include "gradsharp/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace gradsharp {
namespace {

double max_code(int depth)
{
    return std::ldexp(1.0, depth) - 1.0;
}

void check_depth(int depth)
{
    if (depth != 8 && depth != 16)
        throw Error("unsupported bit depth " + std::to_string(depth) + " (expected 8 or 16)");
}

} // namespace

const char* to_string(Axis axis) noexcept
{
    return axis == Axis::X ? "x" : "y";
}

GrayImage::GrayImage(int width, int height, std::vector<double> samples, int source_depth)
    : width_(width), height_(height), samples_(std::move(samples)), source_depth_(source_depth)
{
    if (width < 1 || height < 1)
        throw Error("image dimensions must be at least 1x1");
    check_depth(source_depth);
    if (samples_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw Error("sample count does not match image dimensions");
    for (double s : samples_) {
        if (!(s >= 0.0 && s <= 1.0))
            throw Error("image samples must lie in [0,1]");
    }
}

GrayImage GrayImage::filled(int width, int height, double value, int source_depth)
{
    return GrayImage(width, height,
                     std::vector<double>(static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0), value),
                     source_depth);
}

GrayImage GrayImage::from_raw(int width, int height, std::span<const std::uint16_t> raw, int depth)
{
    check_depth(depth);
    const double scale = max_code(depth);
    std::vector<double> samples(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] > scale)
            throw Error("raw sample exceeds bit depth");
        samples[i] = raw[i] / scale;
    }
    return GrayImage(width, height, std::move(samples), depth);
}

std::vector<std::uint16_t> GrayImage::quantize(int depth) const
{
    check_depth(depth);
    const double scale = max_code(depth);
    std::vector<std::uint16_t> raw(samples_.size());
    std::transform(samples_.begin(), samples_.end(), raw.begin(),
                   [scale](double s) { return static_cast<std::uint16_t>(std::lround(s * scale)); });
    return raw;
}

GrayImage GrayImage::with_samples(std::vector<double> samples) const
{
    for (double& s : samples)
        s = std::clamp(s, 0.0, 1.0);
    return GrayImage(width_, height_, std::move(samples), source_depth_);
}

double GrayImage::mean() const noexcept
{
    return std::accumulate(samples_.begin(), samples_.end(), 0.0) / static_cast<double>(samples_.size());
}

BinaryMask::BinaryMask(int width, int height, bool value)
    : width_(width), height_(height),
      bits_(static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0), value ? 1 : 0)
{
    if (width < 1 || height < 1)
        throw Error("mask dimensions must be at least 1x1");
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits))
{
    if (width < 1 || height < 1)
        throw Error("mask dimensions must be at least 1x1");
    if (bits_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw Error("mask size does not match dimensions");
    for (auto& b : bits_)
        b = b ? 1 : 0;
}

std::size_t BinaryMask::count() const noexcept
{
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool BinaryMask::same_shape(const GrayImage& image) const noexcept
{
    return width_ == image.width() && height_ == image.height();
}

BinaryMask operator&(const BinaryMask& a, const BinaryMask& b)
{
    if (a.width_ != b.width_ || a.height_ != b.height_)
        throw Error("mask shape mismatch");
    std::vector<std::uint8_t> bits(a.bits_.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        bits[i] = a.bits_[i] & b.bits_[i];
    return BinaryMask(a.width_, a.height_, std::move(bits));
}

GrayImage apply_mask(const GrayImage& image, const BinaryMask& mask)
{
    if (!mask.same_shape(image))
        throw Error("mask shape mismatch");
    std::vector<double> out(image.samples().begin(), image.samples().end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!mask[i])
            out[i] = 0.0;
    }
    return GrayImage(image.width(), image.height(), std::move(out), image.source_depth());
}

} // namespace gradsharp
