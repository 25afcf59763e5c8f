#include "spatialkit/geometry.hpp"

namespace spatialkit {

RoofLines detect_roof_lines(const ImageBuffer& gray, const RoofConfig& cfg) {
    require_single_channel(gray, "detect_roof_lines");
    RoofLines out;
    out.edges = canny_adaptive(gray, cfg.canny_sigma, cfg.median_side).edges;
    out.diagonal_edges =
        binary_union(morph(out.edges, StructuringElement::diagonal(cfg.diagonal_side), MorphOp::Open),
                     morph(out.edges, StructuringElement::anti_diagonal(cfg.diagonal_side), MorphOp::Open));
    out.lines = hough_lines(out.diagonal_edges, cfg.rho_res, cfg.theta_res_deg, cfg.votes);
    out.angles_deg = roof_angle(out.lines);
    return out;
}

}  // namespace spatialkit
