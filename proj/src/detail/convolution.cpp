#include "convolution.hpp"

#include "gradsharp/error.hpp"

#include <algorithm>

namespace gradsharp::detail {
namespace {

// Output index range [lo, hi) where every tap lands inside [0, n).
struct Interior {
    int lo;
    int hi;
};

Interior interior(int n, int radius)
{
    const int lo = std::min(radius, n);
    const int hi = std::max(lo, n - radius);
    return {lo, hi};
}

} // namespace

std::vector<double> correlate_axis(std::span<const double> in, int width, int height,
                                   std::span<const double> taps, Axis axis)
{
    if (taps.size() % 2 == 0)
        throw Error("kernel length must be odd");
    const int r = static_cast<int>(taps.size() / 2);
    std::vector<double> out(in.size());

    if (axis == Axis::X) {
        const auto [lo, hi] = interior(width, r);
        for (int y = 0; y < height; ++y) {
            const double* row = in.data() + static_cast<std::size_t>(y) * width;
            double* dst = out.data() + static_cast<std::size_t>(y) * width;
            auto edge = [&](int x) {
                double acc = 0.0;
                for (int k = -r; k <= r; ++k)
                    acc += taps[k + r] * row[reflect_index(x + k, width)];
                dst[x] = acc;
            };
            for (int x = 0; x < lo; ++x)
                edge(x);
            for (int x = lo; x < hi; ++x) {
                const double* src = row + x - r;
                double acc = 0.0;
                for (std::size_t k = 0; k < taps.size(); ++k)
                    acc += taps[k] * src[k];
                dst[x] = acc;
            }
            for (int x = std::max(hi, lo); x < width; ++x)
                edge(x);
        }
        return out;
    }

    // Y axis: accumulate whole rows so the inner loop runs contiguously.
    std::vector<const double*> src_rows(taps.size());
    for (int y = 0; y < height; ++y) {
        for (int k = -r; k <= r; ++k)
            src_rows[k + r] = in.data() + static_cast<std::size_t>(reflect_index(y + k, height)) * width;
        double* dst = out.data() + static_cast<std::size_t>(y) * width;
        for (int x = 0; x < width; ++x)
            dst[x] = 0.0;
        for (std::size_t k = 0; k < taps.size(); ++k) {
            const double t = taps[k];
            if (t == 0.0)
                continue;
            const double* src = src_rows[k];
            for (int x = 0; x < width; ++x)
                dst[x] += t * src[x];
        }
    }
    return out;
}

std::vector<double> convolve_2d(std::span<const double> in, int width, int height,
                                std::span<const double> kernel, int kernel_width, int kernel_height)
{
    if (kernel_width % 2 == 0 || kernel_height % 2 == 0)
        throw Error("kernel dimensions must be odd");
    if (kernel.size() != static_cast<std::size_t>(kernel_width) * kernel_height)
        throw Error("kernel size mismatch");
    const int rx = kernel_width / 2;
    const int ry = kernel_height / 2;
    std::vector<double> out(in.size(), 0.0);

    // Scatter each kernel tap as a shifted, scaled copy of the reflected input rows.
    std::vector<int> col_index(static_cast<std::size_t>(width));
    for (int ky = 0; ky < kernel_height; ++ky) {
        for (int kx = 0; kx < kernel_width; ++kx) {
            // Convolution: out(x,y) += k(kx,ky) * in(x - (kx - rx), y - (ky - ry)).
            const double t = kernel[static_cast<std::size_t>(ky) * kernel_width + kx];
            if (t == 0.0)
                continue;
            const int dx = rx - kx;
            const int dy = ry - ky;
            for (int x = 0; x < width; ++x)
                col_index[x] = reflect_index(x + dx, width);
            for (int y = 0; y < height; ++y) {
                const double* src = in.data() + static_cast<std::size_t>(reflect_index(y + dy, height)) * width;
                double* dst = out.data() + static_cast<std::size_t>(y) * width;
                for (int x = 0; x < width; ++x)
                    dst[x] += t * src[col_index[x]];
            }
        }
    }
    return out;
}

} // namespace gradsharp::detail
