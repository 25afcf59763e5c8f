#include "spatialkit/enhance.hpp"

#include <algorithm>
#include <cmath>

namespace spatialkit {

QuantizationMap::QuantizationMap(std::vector<std::uint8_t> thresholds, std::vector<std::uint8_t> outputs)
    : thresholds_(std::move(thresholds)), outputs_(std::move(outputs)) {
    if (outputs_.size() != thresholds_.size() + 1)
        throw ArgumentError("quantization map needs exactly one more output than thresholds (" +
                            std::to_string(thresholds_.size()) + " thresholds, " +
                            std::to_string(outputs_.size()) + " outputs)");
    for (std::size_t i = 1; i < thresholds_.size(); ++i)
        if (thresholds_[i] <= thresholds_[i - 1])
            throw ArgumentError("quantization thresholds must be strictly ascending");
}

QuantizationMap QuantizationMap::paper8() {
    return QuantizationMap({30, 60, 90, 120, 160, 190, 220}, {10, 20, 50, 70, 100, 140, 180, 200});
}

QuantizationMap QuantizationMap::preset(const std::string& name) {
    if (name == "paper8") return paper8();
    throw ArgumentError("unknown quantization preset '" + name + "'");
}

std::uint8_t QuantizationMap::map(std::uint8_t p) const {
    const auto it = std::lower_bound(thresholds_.begin(), thresholds_.end(), p);
    return outputs_[static_cast<std::size_t>(it - thresholds_.begin())];
}

Kernel::Kernel(Eigen::MatrixXd weights) : weights_(std::move(weights)) {
    if (weights_.rows() != weights_.cols() || weights_.rows() % 2 == 0)
        throw ArgumentError("kernel must be square with an odd side, got " + std::to_string(weights_.rows()) +
                            "x" + std::to_string(weights_.cols()));
}

PlaneXd filter2d(const PlaneXd& src, const Kernel& k) {
    const int h = static_cast<int>(src.rows()), w = static_cast<int>(src.cols());
    const int r = k.radius();
    PlaneXd padded(h + 2 * r, w + 2 * r);
    for (int y = 0; y < h + 2 * r; ++y) {
        const int sy = std::clamp(y - r, 0, h - 1);
        for (int x = 0; x < w + 2 * r; ++x) padded(y, x) = src(sy, std::clamp(x - r, 0, w - 1));
    }
    PlaneXd out(h, w);
    const int side = k.side();
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int ky = 0; ky < side; ++ky)
                for (int kx = 0; kx < side; ++kx) acc += k(ky, kx) * padded(y + ky, x + kx);
            out(y, x) = acc;
        }
    return out;
}

ImageBuffer step_quantize(const ImageBuffer& img, const QuantizationMap& map) {
    require_space(img, ColorSpace::Gray, "step_quantize");
    std::array<std::uint8_t, 256> lut{};
    for (int k = 0; k < 256; ++k) lut[k] = map.map(static_cast<std::uint8_t>(k));
    return apply_lut(img, lut);
}

std::array<std::uint8_t, 256> equalization_lut(const Histogram& h) {
    const Cdf c = cdf(h);
    std::array<std::uint8_t, 256> lut{};
    if (c.masked_max == c.masked_min) {
        for (int k = 0; k < 256; ++k) lut[k] = static_cast<std::uint8_t>(k);
        return lut;
    }
    const double lo = static_cast<double>(c.masked_min);
    const double span = static_cast<double>(c.masked_max) - lo;
    for (int k = 0; k < 256; ++k) lut[k] = saturate_u8((static_cast<double>(c.values[k]) - lo) * 255.0 / span);
    return lut;
}

ImageBuffer equalize_rgb(const ImageBuffer& img) {
    if (img.space() != ColorSpace::RGB && img.space() != ColorSpace::BGR)
        throw TypeError("equalize_rgb expects RGB or BGR input, got " + std::string(to_string(img.space())));
    ImageBuffer out = img;
    for (int c = 0; c < 3; ++c) out = apply_lut(out, equalization_lut(histogram(img, c)), c);
    return out;
}

ImageBuffer equalize_luma(const ImageBuffer& ycrcb) {
    require_space(ycrcb, ColorSpace::YCrCb, "equalize_luma");
    return apply_lut(ycrcb, equalization_lut(histogram(ycrcb, 0)), 0);
}

ImageBuffer equalize_ycrcb(const ImageBuffer& bgr) {
    require_space(bgr, ColorSpace::BGR, "equalize_ycrcb");
    return convert_color(equalize_luma(convert_color(bgr, ColorSpace::YCrCb)), ColorSpace::BGR);
}

ImageBuffer hsv_brighten(const ImageBuffer& bgr, int v) {
    require_space(bgr, ColorSpace::BGR, "hsv_brighten");
    if (v < 0 || v > 255) throw ArgumentError("hsv_brighten offset must be in [0,255], got " + std::to_string(v));
    std::array<std::uint8_t, 256> lut{};
    for (int k = 0; k < 256; ++k) lut[k] = static_cast<std::uint8_t>(std::min(k + v, 255));
    return convert_color(apply_lut(convert_color(bgr, ColorSpace::HSV), lut, 2), ColorSpace::BGR);
}

ImageBuffer convolve(const ImageBuffer& img, const Kernel& k) {
    require_single_channel(img, "convolve");
    return from_plane(filter2d(to_plane(img), k), ColorSpace::Gray);
}

Kernel sharpen_kernel() {
    Eigen::MatrixXd m(3, 3);
    m << -1, -1, -1,
         -1,  9, -1,
         -1, -1, -1;
    return Kernel(m);
}

ImageBuffer sharpen(const ImageBuffer& img) {
    const Kernel k = sharpen_kernel();
    if (img.channels() == 1) return convolve(img.with_space(ColorSpace::Gray), k);
    std::vector<ImageBuffer> planes = split(img);
    for (auto& p : planes) p = convolve(p, k);
    return merge(planes, img.space());
}

Kernel unsharp_kernel(double alpha) {
    if (!(alpha >= 0.0)) throw ArgumentError("unsharp alpha must be >= 0, got " + std::to_string(alpha));
    Eigen::Matrix3d k1, k2;
    k1 << -1,  1, -1,
           1,  1,  1,
          -1,  1, -1;
    k2 <<  0, -1,  0,
          -1,  5, -1,
           0, -1,  0;
    return Kernel((alpha * k1 + k2) / (alpha + 1.0));
}

double gaussian_sigma_for(int side) { return 0.3 * ((side - 1) * 0.5 - 1.0) + 0.8; }

Kernel gaussian_kernel(int side) {
    if (side < 1 || side % 2 == 0)
        throw ArgumentError("gaussian kernel side must be odd and positive, got " + std::to_string(side));
    const double sigma = gaussian_sigma_for(side);
    const int r = side / 2;
    Eigen::VectorXd g(side);
    for (int i = 0; i < side; ++i) g(i) = std::exp(-0.5 * double((i - r) * (i - r)) / (sigma * sigma));
    g /= g.sum();
    return Kernel(g * g.transpose());
}

ImageBuffer gamma_correct(const ImageBuffer& img, double gamma) {
    require_single_channel(img, "gamma_correct");
    if (!(gamma > 0.0)) throw ArgumentError("gamma must be > 0, got " + std::to_string(gamma));
    std::array<std::uint8_t, 256> lut{};
    for (int k = 0; k < 256; ++k) lut[k] = saturate_u8(255.0 * std::pow(k / 255.0, 1.0 / gamma));
    return apply_lut(img.with_space(ColorSpace::Gray), lut);
}

ImageBuffer complement(const ImageBuffer& img) {
    require_single_channel(img, "complement");
    std::array<std::uint8_t, 256> lut{};
    for (int k = 0; k < 256; ++k) lut[k] = static_cast<std::uint8_t>(255 - k);
    return apply_lut(img, lut);
}

ImageBuffer gaussian_blur(const ImageBuffer& img, int side) {
    return convolve(img, gaussian_kernel(side));
}

ImageBuffer median_filter(const ImageBuffer& img, int side) {
    require_single_channel(img, "median_filter");
    if (side < 1 || side % 2 == 0)
        throw ArgumentError("median filter side must be odd and positive, got " + std::to_string(side));
    const int r = side / 2, w = img.width(), h = img.height();
    ImageBuffer out(w, h, img.space());
    std::vector<std::uint8_t> window(static_cast<std::size_t>(side) * side);
    const auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            std::size_t n = 0;
            for (int dy = -r; dy <= r; ++dy) {
                const int sy = std::clamp(y + dy, 0, h - 1);
                for (int dx = -r; dx <= r; ++dx) window[n++] = img.at(std::clamp(x + dx, 0, w - 1), sy);
            }
            std::nth_element(window.begin(), mid, window.end());
            out.at(x, y) = *mid;
        }
    return out;
}

ImageBuffer amplify_noise(const ImageBuffer& img, double beta) {
    require_single_channel(img, "amplify_noise");
    if (!(beta >= 0.0)) throw ArgumentError("noise gain beta must be >= 0, got " + std::to_string(beta));
    const PlaneXd src = to_plane(img);
    const PlaneXd blurred = to_plane(gaussian_blur(img.with_space(ColorSpace::Gray), 7));
    return from_plane(src + beta * (src - blurred), ColorSpace::Gray);
}

}  // namespace spatialkit
