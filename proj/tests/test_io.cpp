#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "synth.hpp"

#include "spatialkit/io.hpp"

using namespace spatialkit;
namespace fs = std::filesystem;

namespace {

class IoTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("spatialkit_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path file(const std::string& name) const { return dir_ / name; }

    void write_bytes(const fs::path& p, const std::string& bytes) const {
        std::ofstream(p, std::ios::binary) << bytes;
    }

    fs::path dir_;
};

}  // namespace

TEST_F(IoTest, GrayPngRoundTrip) {
    ImageBuffer img(3, 3, ColorSpace::Gray);
    for (int i = 0; i < 9; ++i) img.data()[i] = static_cast<std::uint8_t>(i * 30);
    save_image(img, file("a.png"));
    EXPECT_EQ(load_image(file("a.png")), img);
}

TEST_F(IoTest, ColorPngRoundTrip) {
    std::mt19937 rng(5);
    ImageBuffer rgb = convert_color(synth::random_gray(7, 5, rng), ColorSpace::RGB);
    rgb.at(1, 1, 2) = 3;
    save_image(rgb, file("c.png"));
    EXPECT_EQ(load_image(file("c.png")), rgb);
}

TEST_F(IoTest, BgrIsStoredAsRgb) {
    ImageBuffer bgr(1, 1, ColorSpace::BGR, std::vector<std::uint8_t>{1, 2, 3});
    save_image(bgr, file("b.ppm"));
    const ImageBuffer back = load_image(file("b.ppm"));
    EXPECT_EQ(back.space(), ColorSpace::RGB);
    EXPECT_EQ(back.at(0, 0, 0), 3);
    EXPECT_EQ(back.at(0, 0, 2), 1);
}

TEST_F(IoTest, PgmAndPpmRoundTrip) {
    std::mt19937 rng(6);
    const ImageBuffer g = synth::random_gray(9, 4, rng);
    save_image(g, file("g.pgm"));
    EXPECT_EQ(load_image(file("g.pgm")), g);
    const ImageBuffer rgb = convert_color(g, ColorSpace::RGB);
    save_image(rgb, file("g.ppm"));
    EXPECT_EQ(load_image(file("g.ppm")), rgb);
}

TEST_F(IoTest, HandBuiltPgmFixture) {
    write_bytes(file("h.pgm"), std::string("P5\n# two by two\n2 2\n255\n") + std::string("\x00\x7f\x80\xff", 4));
    const ImageBuffer img = load_image(file("h.pgm"));
    ASSERT_EQ(img.width(), 2);
    ASSERT_EQ(img.height(), 2);
    EXPECT_EQ(img.at(0, 0), 0);
    EXPECT_EQ(img.at(1, 0), 127);
    EXPECT_EQ(img.at(0, 1), 128);
    EXPECT_EQ(img.at(1, 1), 255);
}

TEST_F(IoTest, MissingFile) {
    try {
        load_image(file("nope.png"));
        FAIL();
    } catch (const IoError& e) {
        EXPECT_EQ(e.kind(), IoError::Kind::MissingFile);
    }
}

TEST_F(IoTest, UnsupportedExtension) {
    write_bytes(file("x.bmp"), "BM");
    try {
        load_image(file("x.bmp"));
        FAIL();
    } catch (const IoError& e) {
        EXPECT_EQ(e.kind(), IoError::Kind::UnsupportedFormat);
    }
}

TEST_F(IoTest, SixteenBitPnmUnsupported) {
    write_bytes(file("w.pgm"), std::string("P5 1 1 65535\n") + std::string("\x00\x01", 2));
    try {
        load_image(file("w.pgm"));
        FAIL();
    } catch (const IoError& e) {
        EXPECT_EQ(e.kind(), IoError::Kind::UnsupportedFormat);
    }
}

TEST_F(IoTest, TruncatedRasterIsMalformed) {
    write_bytes(file("t.pgm"), "P5 4 4 255\nabc");
    try {
        load_image(file("t.pgm"));
        FAIL();
    } catch (const IoError& e) {
        EXPECT_EQ(e.kind(), IoError::Kind::MalformedHeader);
    }
}

TEST_F(IoTest, BadMagicIsMalformed) {
    write_bytes(file("m.pgm"), "P2 1 1 255\n0");
    EXPECT_THROW(load_image(file("m.pgm")), IoError);
}

TEST_F(IoTest, RejectsChannelMismatch) {
    EXPECT_THROW(save_image(ImageBuffer(2, 2, ColorSpace::RGB), file("a.pgm")), IoError);
    EXPECT_THROW(save_image(ImageBuffer(2, 2, ColorSpace::Gray), file("a.ppm")), IoError);
    EXPECT_THROW(save_image(ImageBuffer(2, 2, ColorSpace::HSV), file("a.png")), IoError);
}

TEST_F(IoTest, BinarySavesAsGray) {
    ImageBuffer bin(2, 1, ColorSpace::Binary, std::vector<std::uint8_t>{0, 255});
    save_image(bin, file("bin.png"));
    const ImageBuffer back = load_image(file("bin.png"));
    EXPECT_EQ(back.space(), ColorSpace::Gray);
    EXPECT_EQ(back.at(1, 0), 255);
}
