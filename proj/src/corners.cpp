#include "spatialkit/enhance.hpp"
#include "spatialkit/geometry.hpp"

namespace spatialkit {

PlaneXd harris_response(const ImageBuffer& gray, double k) {
    require_single_channel(gray, "harris_response");
    const Gradient g = sobel(to_plane(gray));
    const Kernel box(Eigen::MatrixXd::Constant(3, 3, 1.0 / 9.0));
    const PlaneXd sxx = filter2d(g.gx.square(), box);
    const PlaneXd syy = filter2d(g.gy.square(), box);
    const PlaneXd sxy = filter2d(g.gx * g.gy, box);
    return (sxx * syy - sxy.square()) - k * (sxx + syy).square();
}

CornerSet harris(const ImageBuffer& gray, double k, double rel_thresh, int median_side) {
    require_single_channel(gray, "harris");
    if (!(k > 0.0)) throw ArgumentError("harris k must be > 0");
    if (!(rel_thresh > 0.0 && rel_thresh < 1.0)) throw ArgumentError("harris relative threshold must lie in (0,1)");

    const PlaneXd r = harris_response(median_filter(gray.with_space(ColorSpace::Gray), median_side), k);
    CornerSet out;
    out.response_max = r.maxCoeff();
    out.threshold = rel_thresh * out.response_max;
    if (!(out.response_max > 0.0)) return out;

    const int h = static_cast<int>(r.rows()), w = static_cast<int>(r.cols());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double v = r(y, x);
            if (v < out.threshold) continue;
            bool is_peak = true;
            for (int dy = -1; dy <= 1 && is_peak; ++dy)
                for (int dx = -1; dx <= 1 && is_peak; ++dx) {
                    const int nx = x + dx, ny = y + dy;
                    if ((dx == 0 && dy == 0) || nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    const bool earlier = dy < 0 || (dy == 0 && dx < 0);
                    const double n = r(ny, nx);
                    if (n > v || (earlier && n == v)) is_peak = false;
                }
            if (is_peak) out.points.push_back({x, y, v});
        }
    return out;
}

}  // namespace spatialkit
