#include "spatialkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spatialkit {

namespace {

void require_comparable(const ImageBuffer& a, const ImageBuffer& b, std::string_view op) {
    require_single_channel(a, op);
    require_single_channel(b, op);
    if (a.width() != b.width() || a.height() != b.height())
        throw ArgumentError(std::string(op) + ": dimension mismatch " + std::to_string(a.width()) + "x" +
                            std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                            std::to_string(b.height()));
}

Eigen::VectorXd gaussian_window(int side, double sigma) {
    const int r = side / 2;
    Eigen::VectorXd g(side);
    for (int i = 0; i < side; ++i) g(i) = std::exp(-0.5 * double((i - r) * (i - r)) / (sigma * sigma));
    return g / g.sum();
}

// Weighted sums over every fully contained side x side window.
PlaneXd window_mean(const PlaneXd& p, const Eigen::VectorXd& g) {
    const Eigen::Index side = g.size();
    const Eigen::Index oh = p.rows() - side + 1, ow = p.cols() - side + 1;
    PlaneXd horiz = PlaneXd::Zero(p.rows(), ow);
    for (Eigen::Index i = 0; i < side; ++i) horiz += g(i) * p.middleCols(i, ow);
    PlaneXd out = PlaneXd::Zero(oh, ow);
    for (Eigen::Index i = 0; i < side; ++i) out += g(i) * horiz.middleRows(i, oh);
    return out;
}

double entropy_bits(const std::vector<std::uint64_t>& counts, double total) {
    double h = 0.0;
    for (std::uint64_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / total;
        h -= p * std::log2(p);
    }
    return h;
}

}  // namespace

double ssim(const ImageBuffer& a, const ImageBuffer& b) {
    require_comparable(a, b, "ssim");
    int side = std::min({kSsimWindow, a.width(), a.height()});
    if (side % 2 == 0) --side;
    const Eigen::VectorXd g = gaussian_window(side, kSsimSigma);
    const double c1 = (0.01 * 255.0) * (0.01 * 255.0);
    const double c2 = (0.03 * 255.0) * (0.03 * 255.0);

    const PlaneXd pa = to_plane(a), pb = to_plane(b);
    const PlaneXd mu_a = window_mean(pa, g), mu_b = window_mean(pb, g);
    const PlaneXd var_a = window_mean(pa * pa, g) - mu_a * mu_a;
    const PlaneXd var_b = window_mean(pb * pb, g) - mu_b * mu_b;
    const PlaneXd cov = window_mean(pa * pb, g) - mu_a * mu_b;

    const PlaneXd map = ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
                        ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
    return map.mean();
}

double nmi(const ImageBuffer& a, const ImageBuffer& b) {
    require_comparable(a, b, "nmi");
    std::vector<std::uint64_t> ha(256, 0), hb(256, 0), joint(256 * 256, 0);
    const auto da = a.data(), db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) {
        ++ha[da[i]];
        ++hb[db[i]];
        ++joint[static_cast<std::size_t>(da[i]) * 256 + db[i]];
    }
    const double n = static_cast<double>(da.size());
    const double h_a = entropy_bits(ha, n), h_b = entropy_bits(hb, n), h_ab = entropy_bits(joint, n);
    if (h_ab == 0.0) return da[0] == db[0] ? 2.0 : 1.0;
    return std::clamp((h_a + h_b) / h_ab, 1.0, 2.0);
}

double blend(double ssim_value, double nmi_value, double w) {
    if (!(w >= 0.0 && w <= 1.0)) throw ArgumentError("blend weight w must lie in [0,1], got " + std::to_string(w));
    const double raw = w * ssim_value + (1.0 - w) * (nmi_value - 1.0) / 2.0;
    const double attainable = (1.0 + w) / 2.0;
    return std::clamp(100.0 * raw / attainable, 0.0, 100.0);
}

SimilarityReport blended_score(const ImageBuffer& a, const ImageBuffer& b, double w) {
    if (!(w >= 0.0 && w <= 1.0)) throw ArgumentError("blend weight w must lie in [0,1], got " + std::to_string(w));
    SimilarityReport r;
    r.ssim = ssim(a, b);
    r.nmi = nmi(a, b);
    r.w = w;
    r.blended = blend(r.ssim, r.nmi, w);
    return r;
}

}  // namespace spatialkit
