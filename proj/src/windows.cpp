#include "spatialkit/geometry.hpp"

namespace spatialkit {

namespace {

ImageBuffer corner_mask(const CornerSet& corners, int w, int h) {
    ImageBuffer out(w, h, ColorSpace::Binary);
    for (const Corner& c : corners.points) out.at(c.x, c.y) = 255;
    return out;
}

}  // namespace

WindowLocalization localize_windows(const ImageBuffer& bgr, const WindowConfig& cfg) {
    require_space(bgr, ColorSpace::BGR, "localize_windows");
    const int w = bgr.width(), h = bgr.height();
    const ImageBuffer gray = convert_color(bgr, ColorSpace::Gray);

    const ImageBuffer edges = canny_adaptive(gray, cfg.canny_sigma, cfg.median_side).edges;

    // Edges that survive an opening with a diagonal line are diagonal structures.
    const ImageBuffer diagonal_edges =
        binary_union(morph(edges, StructuringElement::diagonal(cfg.diagonal_side), MorphOp::Open),
                     morph(edges, StructuringElement::anti_diagonal(cfg.diagonal_side), MorphOp::Open));
    const ImageBuffer straight_edges = binary_difference(edges, diagonal_edges);

    const CornerSet corners = harris(gray, cfg.harris_k, cfg.harris_rel, cfg.median_side);
    const ImageBuffer corner_clusters =
        morph(morph(corner_mask(corners, w, h), StructuringElement::square(cfg.densify_dilate), MorphOp::Dilate),
              StructuringElement::square(cfg.densify_open), MorphOp::Open);

    // Geodesic growth of the straight edges inside the dilated edge support
    // bridges small gaps without leaking into empty wall.
    const StructuringElement disk = StructuringElement::disk(cfg.reconstruct_radius);
    const ImageBuffer support = morph(binary_union(edges, corner_clusters), disk, MorphOp::Dilate);
    ImageBuffer mask = binary_union(straight_edges, corner_clusters);
    for (int i = 0; i < cfg.reconstruct_iterations; ++i)
        mask = binary_intersection(morph(mask, disk, MorphOp::Dilate), support);

    mask = morph(mask, StructuringElement::square(cfg.border_side), MorphOp::Dilate);
    mask = fill_holes(mask);
    for (int side : {cfg.cleanup_small, cfg.cleanup_large}) {
        const StructuringElement sq = StructuringElement::square(side);
        mask = morph(morph(mask, sq, MorphOp::Open), sq, MorphOp::Close);
    }

    WindowLocalization out;
    const LabeledRegions labeled = connected_components(mask);
    std::vector<bool> is_door(labeled.regions.size() + 1, false);
    for (const Region& r : labeled.regions) {
        if (r.ratio() > cfg.door_ratio) {
            is_door[static_cast<std::size_t>(r.label)] = true;
            out.doors.push_back(r);
        } else {
            out.windows.push_back(r);
        }
    }
    out.mask = ImageBuffer(w, h, ColorSpace::Binary);
    out.overlay = bgr;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const int label = labeled.labels(y, x);
            if (label == 0 || is_door[static_cast<std::size_t>(label)]) continue;
            out.mask.at(x, y) = 255;
            out.overlay.at(x, y, 0) = 0;
            out.overlay.at(x, y, 1) = 0;
            out.overlay.at(x, y, 2) = 255;
        }
    return out;
}

}  // namespace spatialkit
