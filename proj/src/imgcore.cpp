#include "spatialkit/imgcore.hpp"

#include <algorithm>
#include <string>

namespace spatialkit {

std::string_view to_string(ColorSpace space) {
    switch (space) {
    case ColorSpace::Gray: return "Gray";
    case ColorSpace::RGB: return "RGB";
    case ColorSpace::BGR: return "BGR";
    case ColorSpace::HSV: return "HSV";
    case ColorSpace::YCrCb: return "YCrCb";
    case ColorSpace::Binary: return "Binary";
    }
    return "?";
}

ColorSpace color_space_from_string(std::string_view name) {
    for (auto s : {ColorSpace::Gray, ColorSpace::RGB, ColorSpace::BGR, ColorSpace::HSV, ColorSpace::YCrCb,
                   ColorSpace::Binary})
        if (to_string(s) == name) return s;
    throw ArgumentError("unknown color space '" + std::string(name) + "'");
}

ImageBuffer::ImageBuffer(int width, int height, ColorSpace space, std::uint8_t fill)
    : width_(width), height_(height), space_(space) {
    if (width < 1 || height < 1)
        throw ArgumentError("image dimensions must be positive, got " + std::to_string(width) + "x" +
                            std::to_string(height));
    if (space == ColorSpace::Binary && fill != 0 && fill != 255)
        throw ArgumentError("binary image fill must be 0 or 255");
    data_.assign(pixel_count() * channels(), fill);
}

ImageBuffer::ImageBuffer(int width, int height, ColorSpace space, std::vector<std::uint8_t> data)
    : width_(width), height_(height), space_(space), data_(std::move(data)) {
    if (width < 1 || height < 1)
        throw ArgumentError("image dimensions must be positive, got " + std::to_string(width) + "x" +
                            std::to_string(height));
    if (data_.size() != pixel_count() * channels())
        throw ArgumentError("sample count " + std::to_string(data_.size()) + " does not match " +
                            std::to_string(width) + "x" + std::to_string(height) + "x" +
                            std::to_string(channels()));
    if (space == ColorSpace::Binary &&
        std::any_of(data_.begin(), data_.end(), [](std::uint8_t v) { return v != 0 && v != 255; }))
        throw ArgumentError("binary image may only contain 0 and 255");
}

ImageBuffer ImageBuffer::with_space(ColorSpace space) const {
    if (channels_of(space) != channels())
        throw ConversionError("cannot retag " + std::string(to_string(space_)) + " as " +
                              std::string(to_string(space)));
    return ImageBuffer(width_, height_, space, data_);
}

void require_single_channel(const ImageBuffer& img, std::string_view op) {
    if (img.channels() != 1)
        throw TypeError(std::string(op) + " expects a single-channel image, got " +
                        std::string(to_string(img.space())));
}

void require_space(const ImageBuffer& img, ColorSpace space, std::string_view op) {
    if (img.space() != space)
        throw TypeError(std::string(op) + " expects " + std::string(to_string(space)) + " input, got " +
                        std::string(to_string(img.space())));
}

void require_binary(const ImageBuffer& img, std::string_view op) { require_space(img, ColorSpace::Binary, op); }

std::vector<ImageBuffer> split(const ImageBuffer& img) {
    std::vector<ImageBuffer> planes;
    const ColorSpace plane_space = img.channels() == 1 ? img.space() : ColorSpace::Gray;
    for (int c = 0; c < img.channels(); ++c) {
        ImageBuffer p(img.width(), img.height(), plane_space);
        for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x) p.at(x, y) = img.at(x, y, c);
        planes.push_back(std::move(p));
    }
    return planes;
}

ImageBuffer merge(std::span<const ImageBuffer> planes, ColorSpace space) {
    if (static_cast<int>(planes.size()) != channels_of(space))
        throw ArgumentError("merge: " + std::to_string(planes.size()) + " planes for " +
                            std::string(to_string(space)));
    const int w = planes.front().width(), h = planes.front().height();
    ImageBuffer out(w, h, space);
    for (int c = 0; c < out.channels(); ++c) {
        const ImageBuffer& p = planes[c];
        if (p.width() != w || p.height() != h || p.channels() != 1)
            throw ArgumentError("merge: planes must be single-channel with equal dimensions");
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) out.at(x, y, c) = p.at(x, y);
    }
    return out;
}

ImageBuffer apply_lut(const ImageBuffer& img, const std::array<std::uint8_t, 256>& lut, int channel) {
    ImageBuffer out = img;
    const int nc = img.channels();
    auto data = out.data();
    for (std::size_t i = 0; i < data.size(); ++i)
        if (channel < 0 || static_cast<int>(i % nc) == channel) data[i] = lut[data[i]];
    return out;
}

namespace {

struct Rgb {
    double r, g, b;
};

double luma(const Rgb& p) { return 0.299 * p.r + 0.587 * p.g + 0.114 * p.b; }

std::array<std::uint8_t, 3> rgb_to_ycrcb(const Rgb& p) {
    const double y = luma(p);
    const double cr = std::round((p.r - y) * 0.713) + 128.0;
    const double cb = std::round((p.b - y) * 0.564) + 128.0;
    return {saturate_u8(y), saturate_u8(cr), saturate_u8(cb)};
}

Rgb ycrcb_to_rgb(double y, double cr, double cb) {
    const double dr = cr - 128.0, db = cb - 128.0;
    return {y + 1.403 * dr, y - 0.714 * dr - 0.344 * db, y + 1.773 * db};
}

// Hue in [0,179] (degrees / 2), saturation and value in [0,255].
std::array<std::uint8_t, 3> rgb_to_hsv(const Rgb& p) {
    const double v = std::max({p.r, p.g, p.b});
    const double mn = std::min({p.r, p.g, p.b});
    const double diff = v - mn;
    const double s = v > 0.0 ? 255.0 * diff / v : 0.0;
    double h = 0.0;
    if (diff > 0.0) {
        if (v == p.r)
            h = 60.0 * (p.g - p.b) / diff;
        else if (v == p.g)
            h = 120.0 + 60.0 * (p.b - p.r) / diff;
        else
            h = 240.0 + 60.0 * (p.r - p.g) / diff;
        if (h < 0.0) h += 360.0;
    }
    std::uint8_t hq = saturate_u8(h / 2.0);
    if (hq >= 180) hq = 0;
    return {hq, saturate_u8(s), saturate_u8(v)};
}

Rgb hsv_to_rgb(double h8, double s8, double v) {
    const double s = s8 / 255.0;
    const double c = v * s;
    const double hp = std::fmod(h8 * 2.0, 360.0) / 60.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    const double m = v - c;
    Rgb p{0, 0, 0};
    switch (static_cast<int>(hp)) {
    case 0: p = {c, x, 0}; break;
    case 1: p = {x, c, 0}; break;
    case 2: p = {0, c, x}; break;
    case 3: p = {0, x, c}; break;
    case 4: p = {x, 0, c}; break;
    default: p = {c, 0, x}; break;
    }
    return {p.r + m, p.g + m, p.b + m};
}

template <typename Fn>
ImageBuffer map_pixels(const ImageBuffer& img, ColorSpace target, Fn&& fn) {
    ImageBuffer out(img.width(), img.height(), target);
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            const std::array<std::uint8_t, 3> in{img.at(x, y, 0), img.at(x, y, 1), img.at(x, y, 2)};
            const std::array<std::uint8_t, 3> px = fn(in);
            for (int c = 0; c < out.channels(); ++c) out.at(x, y, c) = px[c];
        }
    return out;
}

Rgb as_rgb(const std::array<std::uint8_t, 3>& bgr) { return {double(bgr[2]), double(bgr[1]), double(bgr[0])}; }

std::array<std::uint8_t, 3> to_bgr(const Rgb& p) { return {saturate_u8(p.b), saturate_u8(p.g), saturate_u8(p.r)}; }

[[noreturn]] void unsupported(ColorSpace from, ColorSpace to) {
    throw ConversionError("unsupported color conversion " + std::string(to_string(from)) + " -> " +
                          std::string(to_string(to)));
}

}  // namespace

ImageBuffer convert_color(const ImageBuffer& img, ColorSpace target) {
    const ColorSpace from = img.space();
    if (from == target) return img;

    const bool gray_like = from == ColorSpace::Gray || from == ColorSpace::Binary;
    if (gray_like) {
        if (target == ColorSpace::Gray) return img.with_space(ColorSpace::Gray);
        if (target != ColorSpace::RGB && target != ColorSpace::BGR) unsupported(from, target);
        ImageBuffer out(img.width(), img.height(), target);
        for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x)
                for (int c = 0; c < 3; ++c) out.at(x, y, c) = img.at(x, y);
        return out;
    }

    if (from == ColorSpace::RGB || from == ColorSpace::BGR) {
        const bool is_rgb = from == ColorSpace::RGB;
        auto rgb_of = [is_rgb](const std::array<std::uint8_t, 3>& px) {
            return is_rgb ? Rgb{double(px[0]), double(px[1]), double(px[2])} : as_rgb(px);
        };
        switch (target) {
        case ColorSpace::Gray:
            return map_pixels(img, target, [&](const auto& px) {
                return std::array<std::uint8_t, 3>{saturate_u8(luma(rgb_of(px))), 0, 0};
            });
        case ColorSpace::RGB:
        case ColorSpace::BGR:
            return map_pixels(img, target, [](const auto& px) {
                return std::array<std::uint8_t, 3>{px[2], px[1], px[0]};
            });
        case ColorSpace::YCrCb:
            if (is_rgb) unsupported(from, target);
            return map_pixels(img, target, [&](const auto& px) { return rgb_to_ycrcb(rgb_of(px)); });
        case ColorSpace::HSV:
            if (is_rgb) unsupported(from, target);
            return map_pixels(img, target, [&](const auto& px) { return rgb_to_hsv(rgb_of(px)); });
        default: unsupported(from, target);
        }
    }

    if (target != ColorSpace::BGR) unsupported(from, target);
    if (from == ColorSpace::YCrCb)
        return map_pixels(img, target, [](const auto& px) {
            return to_bgr(ycrcb_to_rgb(double(px[0]), double(px[1]), double(px[2])));
        });
    if (from == ColorSpace::HSV)
        return map_pixels(img, target, [](const auto& px) {
            return to_bgr(hsv_to_rgb(double(px[0]), double(px[1]), double(px[2])));
        });
    unsupported(from, target);
}

Histogram histogram(const ImageBuffer& img, int channel) {
    if (channel < 0 || channel >= img.channels())
        throw ArgumentError("histogram: channel " + std::to_string(channel) + " out of range for " +
                            std::to_string(img.channels()) + "-channel image");
    Histogram h;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) ++h.bins[img.at(x, y, channel)];
    h.total = img.pixel_count();
    return h;
}

Cdf cdf(const Histogram& h) {
    Cdf out;
    std::uint64_t running = 0;
    bool seen = false;
    for (int k = 0; k < 256; ++k) {
        running += h.bins[k];
        out.values[k] = running;
        if (h.bins[k] > 0 && !seen) {
            out.masked_min = running;
            seen = true;
        }
    }
    out.masked_max = out.values[255];
    return out;
}

}  // namespace spatialkit
