#include "gradsharp/error.hpp"
#include "gradsharp/image.hpp"

#include <doctest.h>

#include <vector>

using namespace gradsharp;

TEST_CASE("raw samples normalize by the bit depth")
{
    const std::vector<std::uint16_t> raw8{0, 255, 128};
    const GrayImage a = GrayImage::from_raw(3, 1, raw8, 8);
    CHECK(a.at(0, 0) == 0.0);
    CHECK(a.at(1, 0) == 1.0);
    CHECK(a.at(2, 0) == doctest::Approx(128.0 / 255.0).epsilon(1e-15));

    const std::vector<std::uint16_t> raw16{32767};
    const GrayImage b = GrayImage::from_raw(1, 1, raw16, 16);
    CHECK(b.at(0, 0) == doctest::Approx(32767.0 / 65535.0).epsilon(1e-15));
    CHECK(b.source_depth() == 16);
}

TEST_CASE("quantize reproduces raw codes at the source depth")
{
    for (int depth : {8, 16}) {
        const int max = (1 << depth) - 1;
        std::vector<std::uint16_t> raw;
        for (int v = 0; v <= max; v += depth == 8 ? 1 : 37)
            raw.push_back(static_cast<std::uint16_t>(v));
        raw.push_back(static_cast<std::uint16_t>(max));
        const GrayImage img = GrayImage::from_raw(static_cast<int>(raw.size()), 1, raw, depth);
        CHECK(img.quantize(depth) == raw);
    }
}

TEST_CASE("image construction rejects bad geometry")
{
    CHECK_THROWS_AS(GrayImage(0, 4, {}, 8), Error);
    CHECK_THROWS_AS(GrayImage(2, 2, std::vector<double>(3), 8), Error);
    CHECK_THROWS_AS(GrayImage(1, 1, {0.5}, 12), Error);
}

TEST_CASE("with_samples clips to the unit interval")
{
    const GrayImage img = GrayImage::filled(3, 1, 0.5).with_samples({-0.2, 0.4, 1.7});
    CHECK(img.at(0, 0) == 0.0);
    CHECK(img.at(1, 0) == 0.4);
    CHECK(img.at(2, 0) == 1.0);
}

TEST_CASE("masks compose with AND")
{
    const BinaryMask a(2, 2, std::vector<std::uint8_t>{1, 1, 0, 1});
    const BinaryMask b(2, 2, std::vector<std::uint8_t>{1, 0, 1, 1});
    const BinaryMask c = a & b;
    CHECK(c == BinaryMask(2, 2, std::vector<std::uint8_t>{1, 0, 0, 1}));
    CHECK(c.count() == 2);
    CHECK((a & BinaryMask(2, 2, true)) == a);
    CHECK_THROWS_AS(a & BinaryMask(3, 2, true), Error);
}

TEST_CASE("apply_mask zeroes invalid samples")
{
    const GrayImage img = GrayImage::filled(2, 1, 0.7);
    const GrayImage out = apply_mask(img, BinaryMask(2, 1, std::vector<std::uint8_t>{0, 1}));
    CHECK(out.at(0, 0) == 0.0);
    CHECK(out.at(1, 0) == 0.7);
}

TEST_CASE("reflect_index mirrors including the edge sample")
{
    CHECK(reflect_index(-1, 5) == 0);
    CHECK(reflect_index(-2, 5) == 1);
    CHECK(reflect_index(5, 5) == 4);
    CHECK(reflect_index(6, 5) == 3);
    CHECK(reflect_index(3, 5) == 3);
    CHECK(reflect_index(-3, 1) == 0);
    CHECK(reflect_index(12, 5) == 2);
}
