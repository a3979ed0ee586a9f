#pragma once

#include "gradsharp/config.hpp"
#include "gradsharp/image.hpp"
#include "gradsharp/metric.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gradsharp {

/// Periodic block scene: n x n squares at pitch 2n on a flat background.
struct SceneSpec {
    int width = 512;
    int height = 512;
    int block_size = 50;
    double brightness = 0.2; // background level
    double contrast = 0.5;   // foreground - background, before clipping
    // 0 anchors the grid at the origin; any other value shifts it by a seeded phase.
    std::uint64_t seed = 0;

    double background() const noexcept;
    double foreground() const noexcept;
};

/// Odd-sized 2-D kernel, row-major.
struct Kernel2D {
    int width = 1;
    int height = 1;
    std::vector<double> taps{1.0};

    double sum() const noexcept;

    static Kernel2D identity();
    /// Sampled isotropic Gaussian, normalized to sum 1.
    static Kernel2D gaussian(int size, double sigma);
};

/// 5x5 sampled Gaussian with sigma 0.8.
Kernel2D default_psf();

/// Whitespace-separated rows of reals; all rows equal length, odd dimensions.
/// The kernel is returned as written (not renormalized).
Kernel2D parse_psf(const std::string& text);
Kernel2D load_psf(const std::string& path);

struct DegradationSpec {
    Kernel2D psf = default_psf();
    double blur_sigma_x = 0.0; // 0 skips the axis
    double blur_sigma_y = 0.0;
    int blur_size = 9;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

struct BenchRecord {
    SceneSpec scene;
    DegradationSpec degradation;
    SharpnessReport report; // zeroed and non-representative when `error` is set
    std::string error;

    bool ok() const noexcept { return error.empty(); }
};

GrayImage generate_scene(const SceneSpec& spec);

/// 2-D convolution with reflect padding. Throws unless the kernel sums to 1 within 1e-9.
GrayImage apply_psf(const GrayImage& img, const Kernel2D& psf);

/// 1-D Gaussian of blur_size taps along X (blur_sigma_x), then along Y (blur_sigma_y).
GrayImage apply_directional_blur(const GrayImage& img, const DegradationSpec& spec);

/// Independent zero-mean Gaussian noise per pixel, clipped to [0,1].
GrayImage add_noise(const GrayImage& img, double noise_sigma, std::uint64_t seed);

/// Scene -> PSF -> directional blur -> noise. Noise is seeded from both specs' seeds.
GrayImage render(const SceneSpec& scene, const DegradationSpec& degradation);

/// Analyzes every (scene, degradation) pair, scene-major. Analysis failures are
/// captured per record. jobs = 0 uses hardware concurrency; order is deterministic.
std::vector<BenchRecord> run_sweep(const std::vector<SceneSpec>& scenes,
                                   const std::vector<DegradationSpec>& degradations,
                                   const MetricConfig& cfg, unsigned jobs = 0);

} // namespace gradsharp
