#include <algorithm>
#include <cmath>
#include <deque>

#include "spatialkit/enhance.hpp"
#include "spatialkit/geometry.hpp"

namespace spatialkit {

Gradient sobel(const PlaneXd& plane) {
    Eigen::MatrixXd kx(3, 3), ky(3, 3);
    kx << -1, 0, 1,
          -2, 0, 2,
          -1, 0, 1;
    ky = kx.transpose();
    return {filter2d(plane, Kernel(kx)), filter2d(plane, Kernel(ky))};
}

CannyThresholds adaptive_thresholds(double median, double sigma) {
    return {std::max(0.0, (1.0 - sigma) * median), std::min(255.0, (1.0 + sigma) * median)};
}

double image_median(const ImageBuffer& gray) {
    require_single_channel(gray, "image_median");
    const Histogram h = histogram(gray);
    const std::uint64_t n = h.total;
    // 0-based ranks of the two middle samples
    const std::uint64_t lo_rank = (n - 1) / 2, hi_rank = n / 2;
    int lo = -1, hi = -1;
    std::uint64_t seen = 0;
    for (int k = 0; k < 256 && hi < 0; ++k) {
        seen += h.bins[k];
        if (lo < 0 && seen > lo_rank) lo = k;
        if (seen > hi_rank) hi = k;
    }
    return 0.5 * (lo + hi);
}

ImageBuffer canny_from_gradient(const Gradient& g, double lower, double upper) {
    const int h = static_cast<int>(g.gx.rows()), w = static_cast<int>(g.gx.cols());
    const PlaneXd mag = (g.gx.square() + g.gy.square()).sqrt();
    auto mag_at = [&](int x, int y) { return (x < 0 || y < 0 || x >= w || y >= h) ? 0.0 : mag(y, x); };

    constexpr double tan22 = 0.41421356237309503;  // tan(22.5 deg)
    constexpr double tan67 = 2.4142135623730949;   // tan(67.5 deg)

    // 0 = suppressed, 1 = candidate, 2 = strong
    Plane<std::uint8_t> state = Plane<std::uint8_t>::Zero(h, w);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double m = mag(y, x);
            if (!(m > lower)) continue;
            const double ax = std::abs(g.gx(y, x)), ay = std::abs(g.gy(y, x));
            int dx = 0, dy = 0;
            if (ay <= tan22 * ax) {
                dx = 1;
            } else if (ay > tan67 * ax) {
                dy = 1;
            } else {
                dx = 1;
                dy = (g.gx(y, x) * g.gy(y, x) > 0) ? 1 : -1;
            }
            if (m > mag_at(x - dx, y - dy) && m >= mag_at(x + dx, y + dy)) state(y, x) = m > upper ? 2 : 1;
        }

    ImageBuffer out(w, h, ColorSpace::Binary);
    std::deque<std::pair<int, int>> queue;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (state(y, x) == 2) {
                out.at(x, y) = 255;
                queue.emplace_back(x, y);
            }
    while (!queue.empty()) {
        const auto [x, y] = queue.front();
        queue.pop_front();
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                const int nx = x + dx, ny = y + dy;
                if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                if (state(ny, nx) == 1 && out.at(nx, ny) == 0) {
                    out.at(nx, ny) = 255;
                    queue.emplace_back(nx, ny);
                }
            }
    }
    return out;
}

ImageBuffer canny(const ImageBuffer& gray, double lower, double upper) {
    require_single_channel(gray, "canny");
    if (lower > upper) throw ArgumentError("canny lower threshold exceeds upper threshold");
    return canny_from_gradient(sobel(to_plane(gray)), lower, upper);
}

ImageBuffer canny_color(const ImageBuffer& img, double lower, double upper) {
    if (img.channels() == 1) return canny(img, lower, upper);
    if (lower > upper) throw ArgumentError("canny lower threshold exceeds upper threshold");
    Gradient best = sobel(to_plane(img, 0));
    PlaneXd best_mag = best.gx.square() + best.gy.square();
    for (int c = 1; c < img.channels(); ++c) {
        const Gradient g = sobel(to_plane(img, c));
        const PlaneXd m = g.gx.square() + g.gy.square();
        for (Eigen::Index i = 0; i < m.size(); ++i)
            if (m(i) > best_mag(i)) {
                best_mag(i) = m(i);
                best.gx(i) = g.gx(i);
                best.gy(i) = g.gy(i);
            }
    }
    return canny_from_gradient(best, lower, upper);
}

AdaptiveCanny canny_adaptive(const ImageBuffer& gray, double sigma, int median_side) {
    require_single_channel(gray, "canny_adaptive");
    if (!(sigma >= 0.0 && sigma <= 1.0))
        throw ArgumentError("canny sigma must lie in [0,1], got " + std::to_string(sigma));
    const ImageBuffer filtered = median_filter(gray.with_space(ColorSpace::Gray), median_side);
    AdaptiveCanny out;
    out.median = image_median(filtered);
    out.thresholds = adaptive_thresholds(out.median, sigma);
    out.edges = canny(filtered, out.thresholds.lower, out.thresholds.upper);
    return out;
}

}  // namespace spatialkit
