#include "gradsharp/io.hpp"

#include "gradsharp/error.hpp"

#include <png.h>
#include <tiffio.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <csetjmp>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

namespace gradsharp {
namespace {

enum class FileKind { Png, Tiff, Unknown };

FileKind sniff(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ImageIoError("cannot open " + path);
    std::array<unsigned char, 8> head{};
    in.read(reinterpret_cast<char*>(head.data()), head.size());
    const auto got = static_cast<std::size_t>(in.gcount());
    if (got == 8 && png_sig_cmp(head.data(), 0, 8) == 0)
        return FileKind::Png;
    if (got >= 4 && ((head[0] == 'I' && head[1] == 'I' && head[2] == 42 && head[3] == 0)
                     || (head[0] == 'M' && head[1] == 'M' && head[2] == 0 && head[3] == 42)))
        return FileKind::Tiff;
    return FileKind::Unknown;
}

// Averages `channels` interleaved color samples (alpha excluded) into one raw value.
std::uint16_t mean_of(const std::uint16_t* px, int color_channels)
{
    if (color_channels == 1)
        return px[0];
    unsigned sum = 0;
    for (int c = 0; c < color_channels; ++c)
        sum += px[c];
    return static_cast<std::uint16_t>((sum + color_channels / 2) / color_channels);
}

// ---------------------------------------------------------------- PNG

struct PngReadHandle {
    png_structp png = nullptr;
    png_infop info = nullptr;
    FILE* fp = nullptr;
    char message[256] = {};

    ~PngReadHandle()
    {
        if (png)
            png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (fp)
            std::fclose(fp);
    }
};

void png_error_to_buffer(png_structp png, png_const_charp msg)
{
    auto* handle = static_cast<PngReadHandle*>(png_get_error_ptr(png));
    std::snprintf(handle->message, sizeof handle->message, "%s", msg);
    png_longjmp(png, 1);
}

void png_ignore_warning(png_structp, png_const_charp) {}

GrayImage load_png(const std::string& path)
{
    PngReadHandle h;
    h.fp = std::fopen(path.c_str(), "rb");
    if (!h.fp)
        throw ImageIoError("cannot open " + path);
    h.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &h, png_error_to_buffer, png_ignore_warning);
    if (!h.png)
        throw ImageIoError("libpng initialization failed");
    h.info = png_create_info_struct(h.png);
    if (!h.info)
        throw ImageIoError("libpng initialization failed");

    std::vector<std::uint16_t> raw;
    std::vector<png_byte> buffer;
    std::vector<png_bytep> rows;
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int depth = 8;
    int color_channels = 1;

    if (setjmp(png_jmpbuf(h.png)))
        throw ImageIoError("corrupt PNG " + path + ": " + h.message);

    png_init_io(h.png, h.fp);
    png_read_info(h.png, h.info);
    width = png_get_image_width(h.png, h.info);
    height = png_get_image_height(h.png, h.info);
    const int bit_depth = png_get_bit_depth(h.png, h.info);
    const int color_type = png_get_color_type(h.png, h.info);

    if (color_type == PNG_COLOR_TYPE_PALETTE)
        png_set_palette_to_rgb(h.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(h.png);
    if (png_get_valid(h.png, h.info, PNG_INFO_tRNS))
        png_set_tRNS_to_alpha(h.png);
    if (color_type & PNG_COLOR_MASK_ALPHA || png_get_valid(h.png, h.info, PNG_INFO_tRNS))
        png_set_strip_alpha(h.png);
    if (bit_depth == 16)
        png_set_swap(h.png);
    png_read_update_info(h.png, h.info);

    depth = png_get_bit_depth(h.png, h.info) == 16 ? 16 : 8;
    const int channels = png_get_channels(h.png, h.info);
    color_channels = channels;
    const std::size_t rowbytes = png_get_rowbytes(h.png, h.info);
    buffer.resize(rowbytes * height);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y)
        rows[y] = buffer.data() + y * rowbytes;
    png_read_image(h.png, rows.data());
    png_read_end(h.png, nullptr);

    if (width == 0 || height == 0)
        throw ImageIoError("zero-dimension image " + path);

    raw.resize(static_cast<std::size_t>(width) * height);
    std::vector<std::uint16_t> px(color_channels);
    for (png_uint_32 y = 0; y < height; ++y) {
        for (png_uint_32 x = 0; x < width; ++x) {
            for (int c = 0; c < color_channels; ++c) {
                const std::size_t k = static_cast<std::size_t>(x) * color_channels + c;
                if (depth == 16) {
                    std::uint16_t v;
                    std::memcpy(&v, rows[y] + 2 * k, 2);
                    px[c] = v;
                } else {
                    px[c] = rows[y][k];
                }
            }
            raw[static_cast<std::size_t>(y) * width + x] = mean_of(px.data(), color_channels);
        }
    }
    return GrayImage::from_raw(static_cast<int>(width), static_cast<int>(height), raw, depth);
}

// ---------------------------------------------------------------- TIFF

thread_local std::string tiff_last_error;

void tiff_error_handler(const char* module, const char* fmt, va_list ap)
{
    char buf[512];
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    tiff_last_error = module ? std::string(module) + ": " + buf : std::string(buf);
}

struct TiffHandlers {
    TiffHandlers()
    {
        TIFFSetErrorHandler(tiff_error_handler);
        TIFFSetWarningHandler(nullptr);
    }
};

void install_tiff_handlers()
{
    static const TiffHandlers once;
}

struct TiffCloser {
    void operator()(TIFF* tif) const { TIFFClose(tif); }
};
using TiffPtr = std::unique_ptr<TIFF, TiffCloser>;

GrayImage load_tiff(const std::string& path)
{
    install_tiff_handlers();
    tiff_last_error.clear();
    TiffPtr tif(TIFFOpen(path.c_str(), "r"));
    if (!tif)
        throw ImageIoError("corrupt TIFF " + path + ": " + tiff_last_error);

    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint16_t bits = 8;
    std::uint16_t spp = 1;
    std::uint16_t planar = PLANARCONFIG_CONTIG;
    std::uint16_t sample_format = SAMPLEFORMAT_UINT;
    std::uint16_t extra_count = 0;
    std::uint16_t* extra_types = nullptr;
    TIFFGetField(tif.get(), TIFFTAG_IMAGEWIDTH, &width);
    TIFFGetField(tif.get(), TIFFTAG_IMAGELENGTH, &height);
    TIFFGetFieldDefaulted(tif.get(), TIFFTAG_BITSPERSAMPLE, &bits);
    TIFFGetFieldDefaulted(tif.get(), TIFFTAG_SAMPLESPERPIXEL, &spp);
    TIFFGetFieldDefaulted(tif.get(), TIFFTAG_PLANARCONFIG, &planar);
    TIFFGetFieldDefaulted(tif.get(), TIFFTAG_SAMPLEFORMAT, &sample_format);
    TIFFGetFieldDefaulted(tif.get(), TIFFTAG_EXTRASAMPLES, &extra_count, &extra_types);

    if (width == 0 || height == 0)
        throw ImageIoError("zero-dimension image " + path);
    if (bits != 8 && bits != 16)
        throw ImageIoError("unsupported TIFF bit depth " + std::to_string(bits) + " in " + path);
    if (sample_format != SAMPLEFORMAT_UINT)
        throw ImageIoError("unsupported TIFF sample format in " + path);
    if (planar != PLANARCONFIG_CONTIG && spp > 1)
        throw ImageIoError("unsupported TIFF planar configuration in " + path);
    if (TIFFIsTiled(tif.get()))
        throw ImageIoError("unsupported tiled TIFF " + path);
    if (spp < 1 || spp > 4)
        throw ImageIoError("unsupported TIFF channel count in " + path);

    const int color_channels = std::max(1, static_cast<int>(spp) - static_cast<int>(extra_count));
    std::vector<unsigned char> line(TIFFScanlineSize(tif.get()));
    std::vector<std::uint16_t> raw(static_cast<std::size_t>(width) * height);
    std::vector<std::uint16_t> px(spp);
    for (std::uint32_t y = 0; y < height; ++y) {
        if (TIFFReadScanline(tif.get(), line.data(), y) < 0)
            throw ImageIoError("corrupt TIFF " + path + ": " + tiff_last_error);
        for (std::uint32_t x = 0; x < width; ++x) {
            for (int c = 0; c < spp; ++c) {
                const std::size_t k = static_cast<std::size_t>(x) * spp + c;
                if (bits == 16) {
                    std::uint16_t v;
                    std::memcpy(&v, line.data() + 2 * k, 2);
                    px[c] = v;
                } else {
                    px[c] = line[k];
                }
            }
            raw[static_cast<std::size_t>(y) * width + x] = mean_of(px.data(), color_channels);
        }
    }
    return GrayImage::from_raw(static_cast<int>(width), static_cast<int>(height), raw, bits);
}

// ---------------------------------------------------------------- writers

void check_write_depth(int depth)
{
    if (depth != 8 && depth != 16)
        throw ImageIoError("output depth must be 8 or 16");
}

struct PngWriteHandle {
    png_structp png = nullptr;
    png_infop info = nullptr;
    FILE* fp = nullptr;
    char message[256] = {};

    ~PngWriteHandle()
    {
        if (png)
            png_destroy_write_struct(&png, info ? &info : nullptr);
        if (fp)
            std::fclose(fp);
    }
};

void png_write_error(png_structp png, png_const_charp msg)
{
    auto* handle = static_cast<PngWriteHandle*>(png_get_error_ptr(png));
    std::snprintf(handle->message, sizeof handle->message, "%s", msg);
    png_longjmp(png, 1);
}

bool ends_with_ci(const std::string& s, const std::string& suffix)
{
    if (s.size() < suffix.size())
        return false;
    return std::equal(suffix.rbegin(), suffix.rend(), s.rbegin(),
                      [](char a, char b) { return std::tolower(static_cast<unsigned char>(a)) == b; });
}

} // namespace

GrayImage load_image(const std::string& path)
{
    switch (sniff(path)) {
    case FileKind::Png:
        return load_png(path);
    case FileKind::Tiff:
        return load_tiff(path);
    case FileKind::Unknown:
        break;
    }
    throw ImageIoError("unsupported format: " + path);
}

void save_png(const std::string& path, const GrayImage& image, int depth)
{
    check_write_depth(depth);
    const std::vector<std::uint16_t> raw = image.quantize(depth);
    const int bytes = depth / 8;
    std::vector<png_byte> buffer(raw.size() * bytes);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (depth == 16) {
            buffer[2 * i] = static_cast<png_byte>(raw[i] >> 8);
            buffer[2 * i + 1] = static_cast<png_byte>(raw[i] & 0xff);
        } else {
            buffer[i] = static_cast<png_byte>(raw[i]);
        }
    }
    std::vector<png_bytep> rows(image.height());
    for (int y = 0; y < image.height(); ++y)
        rows[y] = buffer.data() + static_cast<std::size_t>(y) * image.width() * bytes;

    PngWriteHandle h;
    h.fp = std::fopen(path.c_str(), "wb");
    if (!h.fp)
        throw ImageIoError("cannot write " + path);
    h.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &h, png_write_error, png_ignore_warning);
    if (!h.png)
        throw ImageIoError("libpng initialization failed");
    h.info = png_create_info_struct(h.png);
    if (!h.info)
        throw ImageIoError("libpng initialization failed");
    if (setjmp(png_jmpbuf(h.png)))
        throw ImageIoError("PNG write failed for " + path + ": " + h.message);
    png_init_io(h.png, h.fp);
    png_set_IHDR(h.png, h.info, image.width(), image.height(), depth, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(h.png, h.info);
    png_write_image(h.png, rows.data());
    png_write_end(h.png, nullptr);
}

void save_tiff(const std::string& path, const GrayImage& image, int depth)
{
    check_write_depth(depth);
    install_tiff_handlers();
    tiff_last_error.clear();
    TiffPtr tif(TIFFOpen(path.c_str(), "w"));
    if (!tif)
        throw ImageIoError("cannot write " + path + ": " + tiff_last_error);
    TIFFSetField(tif.get(), TIFFTAG_IMAGEWIDTH, static_cast<std::uint32_t>(image.width()));
    TIFFSetField(tif.get(), TIFFTAG_IMAGELENGTH, static_cast<std::uint32_t>(image.height()));
    TIFFSetField(tif.get(), TIFFTAG_BITSPERSAMPLE, static_cast<std::uint16_t>(depth));
    TIFFSetField(tif.get(), TIFFTAG_SAMPLESPERPIXEL, static_cast<std::uint16_t>(1));
    TIFFSetField(tif.get(), TIFFTAG_PHOTOMETRIC, PHOTOMETRIC_MINISBLACK);
    TIFFSetField(tif.get(), TIFFTAG_PLANARCONFIG, PLANARCONFIG_CONTIG);
    TIFFSetField(tif.get(), TIFFTAG_COMPRESSION, COMPRESSION_NONE);
    TIFFSetField(tif.get(), TIFFTAG_ROWSPERSTRIP, TIFFDefaultStripSize(tif.get(), 0));

    const std::vector<std::uint16_t> raw = image.quantize(depth);
    std::vector<unsigned char> line(static_cast<std::size_t>(image.width()) * depth / 8);
    for (int y = 0; y < image.height(); ++y) {
        const std::uint16_t* src = raw.data() + static_cast<std::size_t>(y) * image.width();
        if (depth == 16)
            std::memcpy(line.data(), src, line.size());
        else
            std::transform(src, src + image.width(), line.begin(),
                           [](std::uint16_t v) { return static_cast<unsigned char>(v); });
        if (TIFFWriteScanline(tif.get(), line.data(), static_cast<std::uint32_t>(y), 0) < 0)
            throw ImageIoError("TIFF write failed for " + path + ": " + tiff_last_error);
    }
}

void save_image(const std::string& path, const GrayImage& image, int depth)
{
    const int d = depth == 0 ? image.source_depth() : depth;
    if (ends_with_ci(path, ".png"))
        save_png(path, image, d);
    else if (ends_with_ci(path, ".tif") || ends_with_ci(path, ".tiff"))
        save_tiff(path, image, d);
    else
        throw ImageIoError("cannot infer image format from " + path);
}

} // namespace gradsharp
