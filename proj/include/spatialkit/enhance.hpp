#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "spatialkit/imgcore.hpp"

namespace spatialkit {

/// Piecewise-constant intensity map: p -> outputs[i] for the first i with
/// p <= thresholds[i], otherwise outputs.back().
class QuantizationMap {
public:
    QuantizationMap(std::vector<std::uint8_t> thresholds, std::vector<std::uint8_t> outputs);

    /// T = {30,60,90,120,160,190,220}, V = {10,20,50,70,100,140,180,200}.
    static QuantizationMap paper8();
    static QuantizationMap preset(const std::string& name);

    const std::vector<std::uint8_t>& thresholds() const noexcept { return thresholds_; }
    const std::vector<std::uint8_t>& outputs() const noexcept { return outputs_; }

    std::uint8_t map(std::uint8_t p) const;

private:
    std::vector<std::uint8_t> thresholds_;
    std::vector<std::uint8_t> outputs_;
};

/// Square, odd-sided correlation kernel.
class Kernel {
public:
    explicit Kernel(Eigen::MatrixXd weights);

    int side() const noexcept { return static_cast<int>(weights_.rows()); }
    int radius() const noexcept { return side() / 2; }
    const Eigen::MatrixXd& weights() const noexcept { return weights_; }
    double operator()(int row, int col) const { return weights_(row, col); }
    double sum() const { return weights_.sum(); }

private:
    Eigen::MatrixXd weights_;
};

/// Replicate-padded 2-D correlation of a floating plane.
PlaneXd filter2d(const PlaneXd& src, const Kernel& k);

ImageBuffer step_quantize(const ImageBuffer& img, const QuantizationMap& map);

/// Masked-CDF lookup table; identity when the channel is constant.
std::array<std::uint8_t, 256> equalization_lut(const Histogram& h);

ImageBuffer equalize_rgb(const ImageBuffer& img);
/// Equalizes only the Y plane of a YCrCb image.
ImageBuffer equalize_luma(const ImageBuffer& ycrcb);
ImageBuffer equalize_ycrcb(const ImageBuffer& bgr);
ImageBuffer hsv_brighten(const ImageBuffer& bgr, int v);

ImageBuffer convolve(const ImageBuffer& img, const Kernel& k);
Kernel sharpen_kernel();
ImageBuffer sharpen(const ImageBuffer& img);

Kernel unsharp_kernel(double alpha);
Kernel gaussian_kernel(int side);
double gaussian_sigma_for(int side);

ImageBuffer gamma_correct(const ImageBuffer& img, double gamma);
ImageBuffer complement(const ImageBuffer& img);
ImageBuffer gaussian_blur(const ImageBuffer& img, int side);
ImageBuffer median_filter(const ImageBuffer& img, int side);
ImageBuffer amplify_noise(const ImageBuffer& img, double beta);

}  // namespace spatialkit
