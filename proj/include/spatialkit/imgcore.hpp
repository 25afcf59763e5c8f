#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "spatialkit/errors.hpp"

namespace spatialkit {

enum class ColorSpace { Gray, RGB, BGR, HSV, YCrCb, Binary };

std::string_view to_string(ColorSpace space);
ColorSpace color_space_from_string(std::string_view name);

constexpr int channels_of(ColorSpace space) {
    return (space == ColorSpace::Gray || space == ColorSpace::Binary) ? 1 : 3;
}

/// Single-channel working plane, rows = image height.
template <typename Scalar>
using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using PlaneXd = Plane<double>;

/// Round half away from zero, then clamp into [0, 255].
inline std::uint8_t saturate_u8(double v) {
    const double r = std::round(v);
    if (!(r > 0.0)) return 0;
    if (r > 255.0) return 255;
    return static_cast<std::uint8_t>(r);
}

/// Row-major interleaved 8-bit image tagged with its color space.
class ImageBuffer {
public:
    ImageBuffer() = default;
    ImageBuffer(int width, int height, ColorSpace space, std::uint8_t fill = 0);
    ImageBuffer(int width, int height, ColorSpace space, std::vector<std::uint8_t> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int channels() const noexcept { return channels_of(space_); }
    ColorSpace space() const noexcept { return space_; }
    std::size_t pixel_count() const noexcept {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }
    bool empty() const noexcept { return data_.empty(); }

    std::uint8_t& at(int x, int y, int c = 0) {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * channels() + c];
    }
    std::uint8_t at(int x, int y, int c = 0) const {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * channels() + c];
    }

    std::span<std::uint8_t> data() noexcept { return data_; }
    std::span<const std::uint8_t> data() const noexcept { return data_; }

    /// Retag without touching samples; channel counts must agree.
    ImageBuffer with_space(ColorSpace space) const;

    bool operator==(const ImageBuffer&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    ColorSpace space_ = ColorSpace::Gray;
    std::vector<std::uint8_t> data_;
};

/// Throws TypeError unless the image is single channel (Gray or Binary).
void require_single_channel(const ImageBuffer& img, std::string_view op);
void require_space(const ImageBuffer& img, ColorSpace space, std::string_view op);
void require_binary(const ImageBuffer& img, std::string_view op);

/// Copies channel `channel` into a floating plane.
template <typename Scalar = double>
Plane<Scalar> to_plane(const ImageBuffer& img, int channel = 0) {
    Plane<Scalar> out(img.height(), img.width());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) out(y, x) = static_cast<Scalar>(img.at(x, y, channel));
    return out;
}

/// Rounds (half away from zero) and saturates a plane into a single-channel image.
template <typename Derived>
ImageBuffer from_plane(const Eigen::DenseBase<Derived>& plane, ColorSpace space = ColorSpace::Gray) {
    ImageBuffer out(static_cast<int>(plane.cols()), static_cast<int>(plane.rows()), space);
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x) out.at(x, y) = saturate_u8(static_cast<double>(plane(y, x)));
    return out;
}

std::vector<ImageBuffer> split(const ImageBuffer& img);
ImageBuffer merge(std::span<const ImageBuffer> planes, ColorSpace space);

/// Applies a 256-entry lookup table to every sample of the given channel.
ImageBuffer apply_lut(const ImageBuffer& img, const std::array<std::uint8_t, 256>& lut, int channel = -1);

ImageBuffer convert_color(const ImageBuffer& img, ColorSpace target);

struct Histogram {
    std::array<std::uint64_t, 256> bins{};
    std::uint64_t total = 0;
};

struct Cdf {
    std::array<std::uint64_t, 256> values{};
    std::uint64_t masked_min = 0;
    std::uint64_t masked_max = 0;
};

Histogram histogram(const ImageBuffer& img, int channel = 0);
Cdf cdf(const Histogram& h);

}  // namespace spatialkit
