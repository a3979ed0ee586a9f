#include "gradsharp/preprocess.hpp"

#include "gradsharp/error.hpp"

#include <cmath>

namespace gradsharp {

GrayImage filter_anomalous_pixels(const GrayImage& img, const AnomalyFilterParams& params)
{
    if (img.width() < 3 || img.height() < 3)
        throw Error("anomaly filter needs an image of at least 3x3");
    if (!(params.theta > 0.0))
        throw Error("anomaly filter theta must be > 0");

    const int w = img.width();
    const int h = img.height();
    const auto in = img.samples();
    std::vector<double> out(in.begin(), in.end());

    for (int y = 1; y < h - 1; ++y) {
        const double* above = in.data() + static_cast<std::size_t>(y - 1) * w;
        const double* row = above + w;
        const double* below = row + w;
        for (int x = 1; x < w - 1; ++x) {
            const double ring = above[x - 1] + above[x] + above[x + 1] + row[x - 1] + row[x + 1]
                                + below[x - 1] + below[x] + below[x + 1];
            const double mu = ring / 8.0;
            const double p = row[x];
            bool replace;
            if (mu == 0.0)
                replace = p > 0.0;
            else
                replace = std::abs((p - mu) / mu) > params.theta;
            if (replace)
                out[static_cast<std::size_t>(y) * w + x] = mu;
        }
    }
    return GrayImage(w, h, std::move(out), img.source_depth());
}

BinaryMask low_high_mask(const GrayImage& img, double low, double high)
{
    if (!(low < high))
        throw Error("low_high_mask requires low < high");
    const auto in = img.samples();
    std::vector<std::uint8_t> bits(in.size());
    for (std::size_t i = 0; i < in.size(); ++i)
        bits[i] = (in[i] > low && in[i] < high) ? 1 : 0;
    return BinaryMask(img.width(), img.height(), std::move(bits));
}

} // namespace gradsharp
