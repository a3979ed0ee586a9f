#pragma once

#include "gradsharp/image.hpp"

#include <string>

namespace gradsharp {

/// Decodes an 8- or 16-bit PNG or TIFF. Multi-channel input is reduced to
/// the unweighted mean of its color channels; alpha is discarded.
/// Throws ImageIoError on unreadable, unsupported or empty files.
GrayImage load_image(const std::string& path);

/// Writes a single-channel PNG at the given depth (8 or 16).
void save_png(const std::string& path, const GrayImage& image, int depth);

/// Writes a single-channel, strip-organized TIFF at the given depth (8 or 16).
void save_tiff(const std::string& path, const GrayImage& image, int depth);

/// Picks PNG or TIFF from the file extension; depth defaults to the image's source depth.
void save_image(const std::string& path, const GrayImage& image, int depth = 0);

} // namespace gradsharp
