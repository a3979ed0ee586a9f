#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gradsharp {

enum class Axis { X, Y };

const char* to_string(Axis axis) noexcept;

/// Single-channel raster, samples normalized to [0,1] regardless of the
/// bit depth of the file it came from. Immutable after construction.
class GrayImage {
public:
    GrayImage(int width, int height, std::vector<double> samples, int source_depth = 8);

    /// Constant image.
    static GrayImage filled(int width, int height, double value, int source_depth = 8);

    /// Builds from raw integer samples, normalizing by 2^depth - 1.
    static GrayImage from_raw(int width, int height, std::span<const std::uint16_t> raw, int depth);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int source_depth() const noexcept { return source_depth_; }
    std::size_t size() const noexcept { return samples_.size(); }

    std::span<const double> samples() const noexcept { return samples_; }
    double at(int x, int y) const noexcept { return samples_[static_cast<std::size_t>(y) * width_ + x]; }

    /// Re-quantizes to integer codes at `depth` (round to nearest).
    std::vector<std::uint16_t> quantize(int depth) const;

    /// Same geometry and provenance, new samples. Samples are clipped to [0,1].
    GrayImage with_samples(std::vector<double> samples) const;

    double mean() const noexcept;

private:
    int width_;
    int height_;
    std::vector<double> samples_;
    int source_depth_;
};

/// Per-pixel validity map; true means the pixel participates.
class BinaryMask {
public:
    BinaryMask(int width, int height, bool value = true);
    BinaryMask(int width, int height, std::vector<std::uint8_t> bits);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return bits_.size(); }

    bool operator[](std::size_t index) const noexcept { return bits_[index] != 0; }
    bool at(int x, int y) const noexcept { return bits_[static_cast<std::size_t>(y) * width_ + x] != 0; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    std::size_t count() const noexcept;
    bool same_shape(const GrayImage& image) const noexcept;

    friend BinaryMask operator&(const BinaryMask& a, const BinaryMask& b);
    friend bool operator==(const BinaryMask& a, const BinaryMask& b) = default;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> bits_;
};

/// Zeroes every sample whose mask bit is false.
GrayImage apply_mask(const GrayImage& image, const BinaryMask& mask);

/// Reflect (half-sample symmetric) index into [0, n): ... 2 1 0 | 0 1 2 ... n-1 | n-1 n-2 ...
inline int reflect_index(int i, int n) noexcept
{
    const int period = 2 * n;
    int m = i % period;
    if (m < 0)
        m += period;
    return m < n ? m : period - 1 - m;
}

} // namespace gradsharp
