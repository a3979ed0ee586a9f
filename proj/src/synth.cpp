#include "gradsharp/synth.hpp"

#include "detail/convolution.hpp"
#include "detail/parallel.hpp"
#include "gradsharp/error.hpp"
#include "gradsharp/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace gradsharp {
namespace {

constexpr double psf_sum_tolerance = 1e-9;

std::uint64_t mix_seeds(std::uint64_t a, std::uint64_t b)
{
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    std::uint32_t out[2];
    seq.generate(std::begin(out), std::end(out));
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

} // namespace

double SceneSpec::background() const noexcept
{
    return std::clamp(brightness, 0.0, 1.0);
}

double SceneSpec::foreground() const noexcept
{
    return std::clamp(brightness + contrast, 0.0, 1.0);
}

double Kernel2D::sum() const noexcept
{
    double s = 0.0;
    for (double t : taps)
        s += t;
    return s;
}

Kernel2D Kernel2D::identity()
{
    return Kernel2D{};
}

Kernel2D Kernel2D::gaussian(int size, double sigma)
{
    const std::vector<double> row = gaussian_kernel(size, sigma);
    Kernel2D k{size, size, std::vector<double>(static_cast<std::size_t>(size) * size)};
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x)
            k.taps[static_cast<std::size_t>(y) * size + x] = row[y] * row[x];
    return k;
}

Kernel2D default_psf()
{
    return Kernel2D::gaussian(5, 0.8);
}

Kernel2D parse_psf(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::vector<double> row;
        std::string token;
        while (fields >> token) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(token, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != token.size() || !std::isfinite(v))
                throw Error("PSF kernel: not a number: " + token);
            row.push_back(v);
        }
        if (!row.empty())
            rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw Error("PSF kernel is empty");
    const std::size_t width = rows.front().size();
    for (const auto& row : rows) {
        if (row.size() != width)
            throw Error("PSF kernel rows differ in length");
    }
    if (width % 2 == 0 || rows.size() % 2 == 0)
        throw Error("PSF kernel dimensions must be odd");
    Kernel2D k{static_cast<int>(width), static_cast<int>(rows.size()), {}};
    for (const auto& row : rows)
        k.taps.insert(k.taps.end(), row.begin(), row.end());
    return k;
}

Kernel2D load_psf(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot read PSF file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_psf(buf.str());
}

GrayImage generate_scene(const SceneSpec& spec)
{
    if (spec.block_size < 1)
        throw Error("block_size must be >= 1");
    if (spec.width < 2 * spec.block_size || spec.height < 2 * spec.block_size)
        throw Error("block_size too large for scene dimensions");

    const int pitch = 2 * spec.block_size;
    int ox = 0;
    int oy = 0;
    if (spec.seed != 0) {
        std::mt19937_64 rng(spec.seed);
        ox = static_cast<int>(rng() % static_cast<std::uint64_t>(pitch));
        oy = static_cast<int>(rng() % static_cast<std::uint64_t>(pitch));
    }
    const double bg = spec.background();
    const double fg = spec.foreground();
    std::vector<double> samples(static_cast<std::size_t>(spec.width) * spec.height);
    for (int y = 0; y < spec.height; ++y) {
        const bool row_in = (y + oy) % pitch < spec.block_size;
        for (int x = 0; x < spec.width; ++x) {
            const bool in_block = row_in && (x + ox) % pitch < spec.block_size;
            samples[static_cast<std::size_t>(y) * spec.width + x] = in_block ? fg : bg;
        }
    }
    return GrayImage(spec.width, spec.height, std::move(samples), 8);
}

GrayImage apply_psf(const GrayImage& img, const Kernel2D& psf)
{
    if (psf.width % 2 == 0 || psf.height % 2 == 0)
        throw Error("PSF kernel dimensions must be odd");
    if (psf.taps.size() != static_cast<std::size_t>(psf.width) * psf.height)
        throw Error("PSF kernel size mismatch");
    if (std::abs(psf.sum() - 1.0) > psf_sum_tolerance)
        throw Error("PSF kernel must sum to 1");
    return img.with_samples(
        detail::convolve_2d(img.samples(), img.width(), img.height(), psf.taps, psf.width, psf.height));
}

GrayImage apply_directional_blur(const GrayImage& img, const DegradationSpec& spec)
{
    if (spec.blur_size < 1 || spec.blur_size % 2 == 0)
        throw Error("blur_size must be odd");
    if (spec.blur_sigma_x < 0.0 || spec.blur_sigma_y < 0.0)
        throw Error("blur sigma must be >= 0");
    GrayImage out = img;
    if (spec.blur_sigma_x > 0.0)
        out = gaussian_blur_1d(out, spec.blur_size, spec.blur_sigma_x, Axis::X);
    if (spec.blur_sigma_y > 0.0)
        out = gaussian_blur_1d(out, spec.blur_size, spec.blur_sigma_y, Axis::Y);
    return out;
}

GrayImage add_noise(const GrayImage& img, double noise_sigma, std::uint64_t seed)
{
    if (!(noise_sigma >= 0.0))
        throw Error("noise_sigma must be >= 0");
    if (noise_sigma == 0.0)
        return img;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, noise_sigma);
    std::vector<double> samples(img.samples().begin(), img.samples().end());
    for (double& s : samples)
        s += noise(rng);
    return img.with_samples(std::move(samples));
}

GrayImage render(const SceneSpec& scene, const DegradationSpec& degradation)
{
    GrayImage img = generate_scene(scene);
    img = apply_psf(img, degradation.psf);
    img = apply_directional_blur(img, degradation);
    return add_noise(img, degradation.noise_sigma, mix_seeds(scene.seed, degradation.seed));
}

std::vector<BenchRecord> run_sweep(const std::vector<SceneSpec>& scenes,
                                   const std::vector<DegradationSpec>& degradations,
                                   const MetricConfig& cfg, unsigned jobs)
{
    if (scenes.empty() || degradations.empty())
        throw Error("run_sweep needs at least one scene and one degradation");
    validate_config(cfg);

    std::vector<BenchRecord> records(scenes.size() * degradations.size());
    detail::parallel_for_index(records.size(), jobs, [&](std::size_t i) {
        BenchRecord& rec = records[i];
        rec.scene = scenes[i / degradations.size()];
        rec.degradation = degradations[i % degradations.size()];
        try {
            rec.report = analyze(render(rec.scene, rec.degradation), cfg);
        } catch (const Error& e) {
            rec.report = SharpnessReport{};
            rec.error = e.what();
        }
    });
    return records;
}

} // namespace gradsharp
