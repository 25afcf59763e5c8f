#include <cmath>
#include <numbers>
#include <optional>

#include "spatialkit/geometry.hpp"

namespace spatialkit {

CueAngle estimate_cue_angle(const ImageBuffer& rgb, double canny_lower, double canny_upper, int votes) {
    if (!(canny_lower < canny_upper))
        throw ArgumentError("cue angle needs canny lower < upper, got " + std::to_string(canny_lower) + " / " +
                            std::to_string(canny_upper));
    const ImageBuffer edges = canny_color(rgb, canny_lower, canny_upper);
    CueAngle out;
    out.lines = hough_lines(edges, 1.0, 1.0, votes);
    if (out.lines.empty())
        throw NoFeatureError("cue angle", "no Hough line reached " + std::to_string(votes) + " votes");
    double sum = 0.0;
    for (const Line& l : out.lines) sum += l.theta;
    out.theta_avg = sum / static_cast<double>(out.lines.size());
    out.angle_deg = 90.0 - out.theta_avg * 180.0 / std::numbers::pi;
    return out;
}

namespace {

// Reexpress `b` so that its theta lies within 90 degrees of `a`.
Line aligned_to(const Line& a, Line b) {
    if (b.theta - a.theta > std::numbers::pi / 2) {
        b.theta -= std::numbers::pi;
        b.rho = -b.rho;
    } else if (a.theta - b.theta > std::numbers::pi / 2) {
        b.theta += std::numbers::pi;
        b.rho = -b.rho;
    }
    return b;
}

double signed_distance(const Line& l, double x, double y) {
    return x * std::cos(l.theta) + y * std::sin(l.theta) - l.rho;
}

// Foot of the perpendicular from (x, y) onto l.
std::pair<double, double> project(const Line& l, double x, double y) {
    const double d = signed_distance(l, x, y);
    return {x - d * std::cos(l.theta), y - d * std::sin(l.theta)};
}

}  // namespace

CueIsolation isolate_cue(const ImageBuffer& rgb, const CueConfig& cfg) {
    if (rgb.space() != ColorSpace::RGB && rgb.space() != ColorSpace::BGR)
        throw TypeError("isolate_cue expects RGB input, got " + std::string(to_string(rgb.space())));
    CueIsolation out;
    // the angle comes first, but a missing strip is the more
    // specific failure, so an angle error is only raised once the strip exists
    std::optional<NoFeatureError> angle_error;
    try {
        out.angle_deg = estimate_cue_angle(rgb, cfg.canny_lower, cfg.canny_upper, cfg.line_votes).angle_deg;
    } catch (const NoFeatureError& e) {
        angle_error = e;
    }

    ImageBuffer work = convert_color(rgb, ColorSpace::Gray);
    const int w = work.width(), h = work.height();

    out.circles = hough_circles(work, cfg.r_min, cfg.r_max, cfg.circle_votes);
    for (const Circle& c : out.circles) {
        const double rr = c.r + cfg.circle_margin;
        for (int y = std::max(0, int(std::floor(c.cy - rr))); y <= std::min(h - 1, int(std::ceil(c.cy + rr))); ++y)
            for (int x = std::max(0, int(std::floor(c.cx - rr))); x <= std::min(w - 1, int(std::ceil(c.cx + rr))); ++x)
                if ((x - c.cx) * (x - c.cx) + (y - c.cy) * (y - c.cy) <= rr * rr) work.at(x, y) = 0;
    }

    for (auto& v : work.data())
        if (v < cfg.cloth_peak) v = 0;

    const std::vector<Line> lines = hough_lines(canny(work, cfg.canny_lower, cfg.canny_upper), 1.0, 1.0, cfg.line_votes);
    if (lines.size() < 2)
        throw NoFeatureError("cue strip", "found " + std::to_string(lines.size()) + " Hough line(s) with >= " +
                                              std::to_string(cfg.line_votes) + " votes, need 2");

    const double tol = cfg.parallel_tolerance_deg * std::numbers::pi / 180.0;
    const Line a = lines.front();
    const auto [ax, ay] = project(a, (w - 1) / 2.0, (h - 1) / 2.0);
    bool found = false;
    Line b;
    for (std::size_t i = 1; i < lines.size() && !found; ++i) {
        const Line cand = aligned_to(a, lines[i]);
        if (std::abs(cand.theta - a.theta) >= tol) continue;
        if (std::abs(signed_distance(cand, ax, ay)) < cfg.min_strip_width) continue;
        b = cand;
        out.strip_b = lines[i];
        found = true;
    }
    if (!found) throw NoFeatureError("cue strip", "no second near-parallel line bounds the cue");
    out.strip_a = a;

    const auto [bx, by] = project(b, ax, ay);
    const double side_a = signed_distance(a, bx, by) > 0 ? 1.0 : -1.0;
    const double side_b = signed_distance(b, ax, ay) > 0 ? 1.0 : -1.0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const bool inside = side_a * signed_distance(a, x, y) >= -cfg.strip_margin &&
                                side_b * signed_distance(b, x, y) >= -cfg.strip_margin;
            if (!inside) work.at(x, y) = 0;
        }

    if (angle_error) throw *angle_error;
    out.masked = work;
    out.image = rotate(work, -out.angle_deg);
    return out;
}

}  // namespace spatialkit
