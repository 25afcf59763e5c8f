#pragma once

#include "spatialkit/imgcore.hpp"

namespace spatialkit {

struct SimilarityReport {
    double ssim = 0.0;
    double nmi = 1.0;
    double blended = 0.0;
    double w = 0.5;
};

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;

/// Mean SSIM over every fully contained 11x11 Gaussian window (sigma 1.5).
/// Images narrower than the window use the largest odd window that fits.
double ssim(const ImageBuffer& a, const ImageBuffer& b);

/// (H(a) + H(b)) / H(a, b) from 256-bin marginal and joint histograms, base-2 entropy.
/// Two constant images give 2 when their values match and 1 otherwise.
double nmi(const ImageBuffer& a, const ImageBuffer& b);

/// w*SSIM + (1-w)*(NMI-1)/2 rescaled so that its attainable maximum (1+w)/2
/// maps to 100, clamped to [0, 100].
double blend(double ssim_value, double nmi_value, double w);

SimilarityReport blended_score(const ImageBuffer& a, const ImageBuffer& b, double w = 0.5);

}  // namespace spatialkit
