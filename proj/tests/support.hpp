#pragma once

#include "gradsharp/image.hpp"
#include "oracle/reference.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace gradsharp::testing {

inline reference::Raster to_raster(const GrayImage& img)
{
    return {img.width(), img.height(), std::vector<double>(img.samples().begin(), img.samples().end())};
}

inline reference::Bits to_bits(const BinaryMask& mask)
{
    return {mask.width(), mask.height(), std::vector<std::uint8_t>(mask.bits().begin(), mask.bits().end())};
}

// Uniform noise with a sprinkling of exact 0/1 samples so the low/high mask has work to do.
inline GrayImage random_image(int w, int h, std::uint64_t seed, int depth = 16)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> s(static_cast<std::size_t>(w) * h);
    for (double& v : s) {
        const double u = uni(rng);
        v = u < 0.02 ? 0.0 : u > 0.98 ? 1.0 : uni(rng);
    }
    return GrayImage(w, h, std::move(s), depth);
}

// Smooth structure plus noise: realistic enough that gradients spread over many magnitudes.
inline GrayImage textured_image(int w, int h, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double fx = 0.05 + 0.2 * uni(rng);
    const double fy = 0.05 + 0.2 * uni(rng);
    std::vector<double> s(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            s[static_cast<std::size_t>(y) * w + x]
                = 0.5 + 0.25 * std::sin(fx * x) * std::cos(fy * y) + 0.1 * (uni(rng) - 0.5);
    return GrayImage(w, h, std::move(s), 16);
}

class TempDir {
public:
    TempDir()
    {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("gradsharp-test-" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace gradsharp::testing
