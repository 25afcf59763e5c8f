#include <algorithm>
#include <cmath>
#include <numbers>

#include "spatialkit/geometry.hpp"

namespace spatialkit {

std::vector<Line> hough_lines(const ImageBuffer& edges, double rho_res, double theta_res_deg, int votes) {
    require_binary(edges, "hough_lines");
    if (!(rho_res > 0.0)) throw ArgumentError("hough rho resolution must be > 0");
    if (!(theta_res_deg > 0.0 && theta_res_deg <= 180.0))
        throw ArgumentError("hough theta resolution must lie in (0, 180] degrees");
    if (votes < 1) throw ArgumentError("hough vote threshold must be >= 1");

    const int n_theta = static_cast<int>(std::ceil(180.0 / theta_res_deg - 1e-9));
    const double diagonal = std::hypot(double(edges.width()), double(edges.height()));
    const int offset = static_cast<int>(std::ceil(diagonal / rho_res));
    const int n_rho = 2 * offset + 1;

    std::vector<double> cos_t(n_theta), sin_t(n_theta);
    for (int t = 0; t < n_theta; ++t) {
        const double theta = t * theta_res_deg * std::numbers::pi / 180.0;
        cos_t[t] = std::cos(theta);
        sin_t[t] = std::sin(theta);
    }

    std::vector<int> acc(static_cast<std::size_t>(n_theta) * n_rho, 0);
    for (int y = 0; y < edges.height(); ++y)
        for (int x = 0; x < edges.width(); ++x) {
            if (edges.at(x, y) == 0) continue;
            for (int t = 0; t < n_theta; ++t) {
                const double rho = x * cos_t[t] + y * sin_t[t];
                const long j = std::lround(rho / rho_res) + offset;
                ++acc[static_cast<std::size_t>(t) * n_rho + j];
            }
        }

    std::vector<Line> lines;
    for (int t = 0; t < n_theta; ++t)
        for (int j = 0; j < n_rho; ++j) {
            const int v = acc[static_cast<std::size_t>(t) * n_rho + j];
            if (v >= votes)
                lines.push_back({(j - offset) * rho_res, t * theta_res_deg * std::numbers::pi / 180.0, v});
        }
    // stable sort keeps (theta, rho) cell order among equal vote counts
    std::stable_sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.votes > b.votes; });
    return lines;
}

std::vector<double> roof_angle(const std::vector<Line>& lines) {
    std::vector<double> out;
    out.reserve(lines.size());
    for (const Line& l : lines) out.push_back(std::fmod(90.0 + l.theta_deg(), 180.0));
    return out;
}

std::vector<Circle> hough_circles(const ImageBuffer& gray, int r_min, int r_max, int votes,
                                  const CircleSearch& search) {
    require_single_channel(gray, "hough_circles");
    if (r_min < 1 || r_max < r_min)
        throw ArgumentError("hough_circles needs 0 < r_min <= r_max, got [" + std::to_string(r_min) + ", " +
                            std::to_string(r_max) + "]");
    const int w = gray.width(), h = gray.height();
    const Gradient g = sobel(to_plane(gray));
    const ImageBuffer edges = canny_from_gradient(g, search.canny_lower, search.canny_upper);

    std::vector<std::pair<int, int>> edge_points;
    Plane<int> acc = Plane<int>::Zero(h, w);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (edges.at(x, y) == 0) continue;
            edge_points.emplace_back(x, y);
            const double mag = std::hypot(g.gx(y, x), g.gy(y, x));
            if (mag == 0.0) continue;
            const double ux = g.gx(y, x) / mag, uy = g.gy(y, x) / mag;
            for (int r = r_min; r <= r_max; ++r)
                for (int s : {-1, 1}) {
                    const long cx = std::lround(x + s * r * ux), cy = std::lround(y + s * r * uy);
                    if (cx >= 0 && cy >= 0 && cx < w && cy < h) ++acc(cy, cx);
                }
        }
    if (edge_points.empty()) return {};

    Plane<int> support = Plane<int>::Zero(h, w);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            int s = 0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    const int nx = x + dx, ny = y + dy;
                    if (nx >= 0 && ny >= 0 && nx < w && ny < h) s += acc(ny, nx);
                }
            support(y, x) = s;
        }

    struct Candidate {
        int x, y, support;
    };
    std::vector<Candidate> candidates;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const int s = support(y, x);
            if (s < votes) continue;
            bool is_peak = true;
            for (int dy = -1; dy <= 1 && is_peak; ++dy)
                for (int dx = -1; dx <= 1 && is_peak; ++dx) {
                    const int nx = x + dx, ny = y + dy;
                    if ((dx == 0 && dy == 0) || nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    const bool earlier = dy < 0 || (dy == 0 && dx < 0);
                    const int ns = support(ny, nx);
                    if (ns > s || (earlier && ns == s)) is_peak = false;
                }
            if (is_peak) candidates.push_back({x, y, s});
        }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.support > b.support; });

    // Gradient directions on hard edges are coarse, so accumulator peaks can sit a few
    // pixels off. Refine each peak to the nearby center whose edge distances agree best.
    constexpr int kRefine = 3;
    std::vector<int> radius_hist(static_cast<std::size_t>(r_max - r_min + 1));
    auto best_radius = [&](int cx, int cy) {
        std::fill(radius_hist.begin(), radius_hist.end(), 0);
        for (const auto& [ex, ey] : edge_points) {
            const long d = std::lround(std::hypot(double(ex - cx), double(ey - cy)));
            if (d >= r_min && d <= r_max) ++radius_hist[static_cast<std::size_t>(d - r_min)];
        }
        const auto best = std::max_element(radius_hist.begin(), radius_hist.end());
        return std::pair{r_min + int(best - radius_hist.begin()), *best};
    };

    std::vector<Circle> circles;
    for (const Candidate& c : candidates) {
        int bx = c.x, by = c.y, br = 0, bcount = 0;
        for (int dy = -kRefine; dy <= kRefine; ++dy)
            for (int dx = -kRefine; dx <= kRefine; ++dx) {
                const int x = c.x + dx, y = c.y + dy;
                if (x < 0 || y < 0 || x >= w || y >= h) continue;
                const auto [r, count] = best_radius(x, y);
                if (count > bcount) {
                    bx = x, by = y, br = r, bcount = count;
                }
            }
        if (bcount == 0) continue;
        const bool crowded = std::any_of(circles.begin(), circles.end(), [&](const Circle& k) {
            return std::hypot(k.cx - bx, k.cy - by) < r_min;
        });
        if (crowded) continue;
        circles.push_back({double(bx), double(by), double(br), c.support});
    }
    return circles;
}

}  // namespace spatialkit
