#pragma once

// Synthetic scenes with known ground truth.

#include <cmath>
#include <numbers>
#include <random>

#include "spatialkit/imgcore.hpp"

namespace synth {

using spatialkit::ColorSpace;
using spatialkit::ImageBuffer;

inline ImageBuffer random_gray(int w, int h, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(0, 255);
    ImageBuffer img(w, h, ColorSpace::Gray);
    for (auto& v : img.data()) v = static_cast<std::uint8_t>(d(rng));
    return img;
}

inline ImageBuffer random_binary(int w, int h, std::mt19937& rng, double density = 0.5) {
    std::bernoulli_distribution d(density);
    ImageBuffer img(w, h, ColorSpace::Binary);
    for (auto& v : img.data()) v = d(rng) ? 255 : 0;
    return img;
}

// One-pixel-wide line through (cx, cy) at `elevation_deg` above the x axis
// (image y points down), one pixel per step along the dominant axis.
inline ImageBuffer line_raster(int w, int h, double elevation_deg, double cx, double cy) {
    ImageBuffer img(w, h, ColorSpace::Binary);
    const double phi = elevation_deg * std::numbers::pi / 180.0;
    const double dx = std::cos(phi), dy = -std::sin(phi);
    auto set = [&](long x, long y) {
        if (x >= 0 && y >= 0 && x < w && y < h) img.at(int(x), int(y)) = 255;
    };
    if (std::abs(dx) >= std::abs(dy)) {
        for (int x = 0; x < w; ++x) set(x, std::lround(cy + (x - cx) * dy / dx));
    } else {
        for (int y = 0; y < h; ++y) set(std::lround(cx + (y - cy) * dx / dy), y);
    }
    return img;
}

// Smooth gray field: a ramp plus a few low-frequency sinusoids.
inline ImageBuffer smooth_field(int w, int h, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double phase[3] = {u(rng) * 6.28, u(rng) * 6.28, u(rng) * 6.28};
    const double fx = 1.0 + 2.0 * u(rng), fy = 1.0 + 2.0 * u(rng);
    const double tilt = u(rng);
    ImageBuffer img(w, h, ColorSpace::Gray);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double nx = double(x) / w, ny = double(y) / h;
            const double v = 128 + 50 * (tilt * nx + (1 - tilt) * ny - 0.5) +
                             40 * std::sin(2 * std::numbers::pi * fx * nx + phase[0]) *
                                 std::cos(2 * std::numbers::pi * fy * ny + phase[1]) +
                             20 * std::sin(2 * std::numbers::pi * (nx + ny) + phase[2]);
            img.at(x, y) = spatialkit::saturate_u8(v);
        }
    return img;
}

// Textured gray scene: smooth field with blocks and mild noise, so that
// every pipeline stage changes the result.
inline ImageBuffer textured(int w, int h, std::mt19937& rng) {
    ImageBuffer img = smooth_field(w, h, rng);
    std::uniform_int_distribution<int> px(0, w - 1), py(0, h - 1), sz(8, 40), val(0, 255);
    std::normal_distribution<double> noise(0.0, 6.0);
    for (int k = 0; k < 12; ++k) {
        const int x0 = px(rng), y0 = py(rng), bw = sz(rng), bh = sz(rng), v = val(rng);
        for (int y = y0; y < std::min(h, y0 + bh); ++y)
            for (int x = x0; x < std::min(w, x0 + bw); ++x) img.at(x, y) = static_cast<std::uint8_t>(v);
    }
    for (auto& v : img.data()) v = spatialkit::saturate_u8(v + noise(rng));
    return img;
}

inline void fill_rect(ImageBuffer& img, int x0, int y0, int x1, int y1, std::initializer_list<int> color) {
    for (int y = std::max(0, y0); y < std::min(img.height(), y1); ++y)
        for (int x = std::max(0, x0); x < std::min(img.width(), x1); ++x) {
            int c = 0;
            for (int v : color) img.at(x, y, c++) = static_cast<std::uint8_t>(v);
        }
}

inline void fill_disk(ImageBuffer& img, double cx, double cy, double r, std::initializer_list<int> color) {
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) {
                int c = 0;
                for (int v : color) img.at(x, y, c++) = static_cast<std::uint8_t>(v);
            }
}

struct Ball {
    double cx, cy, r;
};

// Billiard table: gray cloth, a bright cue bar and three balls.
struct CueScene {
    ImageBuffer image{1, 1, ColorSpace::RGB};
    double angle_deg = 0.0;
    double bar_cx = 0.0, bar_cy = 0.0, bar_length = 0.0, bar_width = 0.0;
    std::vector<Ball> balls;

    // Pixel centers inside the cue bar rectangle.
    bool on_bar(int x, int y) const {
        const double phi = angle_deg * std::numbers::pi / 180.0;
        const double ux = std::cos(phi), uy = -std::sin(phi);
        const double along = (x - bar_cx) * ux + (y - bar_cy) * uy;
        const double across = -(x - bar_cx) * uy + (y - bar_cy) * ux;
        return std::abs(along) <= bar_length / 2 && std::abs(across) <= bar_width / 2;
    }
};

inline CueScene cue_scene(double angle_deg = 51.5, int w = 480, int h = 360) {
    CueScene s;
    s.angle_deg = angle_deg;
    s.image = ImageBuffer(w, h, ColorSpace::RGB);
    fill_rect(s.image, 0, 0, w, h, {60, 60, 60});
    s.bar_cx = w / 2.0;
    s.bar_cy = h / 2.0;
    s.bar_length = 340;
    s.bar_width = 8;
    s.balls = {{60, 60, 29}, {w - 60.0, h - 60.0, 29}, {w - 70.0, 70, 29}};
    for (const Ball& b : s.balls) fill_disk(s.image, b.cx, b.cy, b.r, {240, 240, 235});
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (s.on_bar(x, y)) {
                s.image.at(x, y, 0) = 220;
                s.image.at(x, y, 1) = 190;
                s.image.at(x, y, 2) = 140;
            }
    return s;
}

struct FacadeScene {
    ImageBuffer image{1, 1, ColorSpace::BGR};
    struct Box {
        int x0, y0, x1, y1;
    };
    std::vector<Box> windows;
    Box door{0, 0, 0, 0};
};

// Light wall with three square dark windows and one door of ratio 2.5.
inline FacadeScene facade(int w = 320, int h = 240) {
    FacadeScene s;
    s.image = ImageBuffer(w, h, ColorSpace::BGR);
    fill_rect(s.image, 0, 0, w, h, {170, 190, 205});
    s.windows = {{30, 40, 70, 80}, {130, 40, 170, 80}, {230, 40, 270, 80}};
    for (const auto& b : s.windows) fill_rect(s.image, b.x0, b.y0, b.x1, b.y1, {90, 60, 40});
    s.door = {135, 125, 165, 200};
    fill_rect(s.image, s.door.x0, s.door.y0, s.door.x1, s.door.y1, {30, 40, 70});
    return s;
}

}  // namespace synth
