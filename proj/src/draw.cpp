#include <cmath>
#include <numbers>

#include "spatialkit/geometry.hpp"

namespace spatialkit {

namespace {

ImageBuffer as_bgr(const ImageBuffer& img) {
    return img.space() == ColorSpace::BGR ? img : convert_color(img, ColorSpace::BGR);
}

void paint(ImageBuffer& bgr, long x, long y) {
    if (x < 0 || y < 0 || x >= bgr.width() || y >= bgr.height()) return;
    bgr.at(int(x), int(y), 0) = 0;
    bgr.at(int(x), int(y), 1) = 0;
    bgr.at(int(x), int(y), 2) = 255;
}

}  // namespace

ImageBuffer overlay_mask(const ImageBuffer& img, const ImageBuffer& mask) {
    require_single_channel(mask, "overlay_mask");
    ImageBuffer out = as_bgr(img);
    if (mask.width() != out.width() || mask.height() != out.height())
        throw ArgumentError("overlay_mask: dimension mismatch");
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x)
            if (mask.at(x, y) != 0) paint(out, x, y);
    return out;
}

ImageBuffer overlay_lines(const ImageBuffer& img, const std::vector<Line>& lines) {
    ImageBuffer out = as_bgr(img);
    for (const Line& l : lines) {
        const double c = std::cos(l.theta), s = std::sin(l.theta);
        // step along the axis the line is most aligned with
        if (std::abs(s) >= std::abs(c)) {
            for (int x = 0; x < out.width(); ++x) paint(out, x, std::lround((l.rho - x * c) / s));
        } else {
            for (int y = 0; y < out.height(); ++y) paint(out, std::lround((l.rho - y * s) / c), y);
        }
    }
    return out;
}

ImageBuffer overlay_circles(const ImageBuffer& img, const std::vector<Circle>& circles) {
    ImageBuffer out = as_bgr(img);
    for (const Circle& c : circles) {
        const int steps = std::max(16, static_cast<int>(std::ceil(2.0 * std::numbers::pi * c.r * 2.0)));
        for (int i = 0; i < steps; ++i) {
            const double t = 2.0 * std::numbers::pi * i / steps;
            paint(out, std::lround(c.cx + c.r * std::cos(t)), std::lround(c.cy + c.r * std::sin(t)));
        }
        paint(out, std::lround(c.cx), std::lround(c.cy));
    }
    return out;
}

ImageBuffer overlay_corners(const ImageBuffer& img, const std::vector<Corner>& corners) {
    ImageBuffer out = as_bgr(img);
    for (const Corner& c : corners)
        for (int d = -2; d <= 2; ++d) {
            paint(out, c.x + d, c.y);
            paint(out, c.x, c.y + d);
        }
    return out;
}

}  // namespace spatialkit
