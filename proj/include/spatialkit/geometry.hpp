#pragma once

#include <numbers>
#include <vector>

#include <Eigen/Core>

#include "spatialkit/imgcore.hpp"

namespace spatialkit {

// ---------------------------------------------------------------------------
// Feature records
// ---------------------------------------------------------------------------

/// Normal form x*cos(theta) + y*sin(theta) = rho, theta in [0, pi).
struct Line {
    double rho = 0.0;
    double theta = 0.0;
    int votes = 0;

    double theta_deg() const { return theta * 180.0 / std::numbers::pi; }
};

struct Circle {
    double cx = 0.0;
    double cy = 0.0;
    double r = 0.0;
    int votes = 0;
};

struct Corner {
    int x = 0;
    int y = 0;
    double response = 0.0;
};

struct CornerSet {
    std::vector<Corner> points;
    double response_max = 0.0;
    double threshold = 0.0;
};

/// Everything a detector run produced, for reporting.
struct FeatureSet {
    std::vector<Line> lines;
    std::vector<Circle> circles;
    std::vector<Corner> corners;
};

// ---------------------------------------------------------------------------
// Edges
// ---------------------------------------------------------------------------

struct Gradient {
    PlaneXd gx;
    PlaneXd gy;
};

/// 3x3 Sobel derivatives with replicate borders.
Gradient sobel(const PlaneXd& plane);

struct CannyThresholds {
    double lower = 0.0;
    double upper = 0.0;
};

/// lower = max(0, (1 - sigma) v), upper = min(255, (1 + sigma) v).
CannyThresholds adaptive_thresholds(double median, double sigma);

/// Median of all samples; the mean of the two middle samples for even counts.
double image_median(const ImageBuffer& gray);

/// Non-maximum suppression plus hysteresis over a precomputed gradient field.
/// A pixel is strong when its L2 magnitude exceeds `upper`, a candidate when it exceeds `lower`.
ImageBuffer canny_from_gradient(const Gradient& g, double lower, double upper);

ImageBuffer canny(const ImageBuffer& gray, double lower, double upper);

/// Per-channel Sobel; each pixel keeps the gradient of the channel with the largest magnitude.
ImageBuffer canny_color(const ImageBuffer& img, double lower, double upper);

struct AdaptiveCanny {
    ImageBuffer edges;
    double median = 0.0;
    CannyThresholds thresholds;
};

AdaptiveCanny canny_adaptive(const ImageBuffer& gray, double sigma, int median_side);

// ---------------------------------------------------------------------------
// Hough transforms
// ---------------------------------------------------------------------------

/// Every accumulator cell with at least `votes` votes, strongest first.
/// theta is sampled at i * theta_res over [0, 180) degrees; rho spans the image diagonal.
std::vector<Line> hough_lines(const ImageBuffer& edges, double rho_res, double theta_res_deg, int votes);

/// (90 + theta_deg) mod 180 for each line.
std::vector<double> roof_angle(const std::vector<Line>& lines);

struct CircleSearch {
    double canny_lower = 50.0;
    double canny_upper = 100.0;
};

std::vector<Circle> hough_circles(const ImageBuffer& gray, int r_min, int r_max, int votes,
                                  const CircleSearch& search = {});

// ---------------------------------------------------------------------------
// Corners
// ---------------------------------------------------------------------------

/// Harris response det(M) - k trace(M)^2 with M box-smoothed over 3x3.
PlaneXd harris_response(const ImageBuffer& gray, double k);

CornerSet harris(const ImageBuffer& gray, double k, double rel_thresh, int median_side);

// ---------------------------------------------------------------------------
// Morphology and regions
// ---------------------------------------------------------------------------

enum class ElementShape { Square, Diagonal, AntiDiagonal, Disk };

class StructuringElement {
public:
    using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    StructuringElement(ElementShape shape, Mask mask);

    static StructuringElement square(int side);
    static StructuringElement diagonal(int side);
    static StructuringElement anti_diagonal(int side);
    static StructuringElement disk(int radius);

    ElementShape shape() const noexcept { return shape_; }
    int side() const noexcept { return static_cast<int>(mask_.rows()); }
    const Mask& mask() const noexcept { return mask_; }

private:
    ElementShape shape_;
    Mask mask_;
};

enum class MorphOp { Dilate, Erode, Open, Close };

/// Pixels outside the image count as background for dilation and foreground for erosion.
ImageBuffer morph(const ImageBuffer& binary, const StructuringElement& elem, MorphOp op);

ImageBuffer binary_union(const ImageBuffer& a, const ImageBuffer& b);
ImageBuffer binary_intersection(const ImageBuffer& a, const ImageBuffer& b);
ImageBuffer binary_difference(const ImageBuffer& a, const ImageBuffer& b);

ImageBuffer fill_holes(const ImageBuffer& binary);

struct Region {
    int label = 0;
    int min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    std::size_t area = 0;

    int width() const { return max_x - min_x + 1; }
    int height() const { return max_y - min_y + 1; }
    double ratio() const { return static_cast<double>(height()) / width(); }
};

struct LabeledRegions {
    Plane<int> labels;
    std::vector<Region> regions;  // regions[i].label == i + 1
};

LabeledRegions connected_components(const ImageBuffer& binary);

// ---------------------------------------------------------------------------
// Composite procedures
// ---------------------------------------------------------------------------

struct WindowConfig {
    int median_side = 5;
    double canny_sigma = 0.5;
    int diagonal_side = 7;
    double harris_k = 0.04;
    double harris_rel = 0.01;
    int densify_dilate = 9;
    int densify_open = 11;
    int reconstruct_radius = 5;
    int reconstruct_iterations = 10;
    int border_side = 3;
    int cleanup_small = 7;
    int cleanup_large = 9;
    double door_ratio = 1.8;
};

struct WindowLocalization {
    ImageBuffer mask;     // Binary
    ImageBuffer overlay;  // BGR, mask pixels painted pure red
    std::vector<Region> windows;
    std::vector<Region> doors;
};

WindowLocalization localize_windows(const ImageBuffer& bgr, const WindowConfig& cfg = {});

struct RoofConfig {
    int median_side = 7;
    double canny_sigma = 0.5;
    int diagonal_side = 7;
    double rho_res = 1.0;
    double theta_res_deg = 7.0;
    int votes = 50;
};

struct RoofLines {
    ImageBuffer edges;           // adaptive Canny output
    ImageBuffer diagonal_edges;  // union of diagonal and anti-diagonal openings
    std::vector<Line> lines;
    std::vector<double> angles_deg;  // roof_angle of each line
};

/// Adaptive Canny, keep diagonal structures, then Hough lines and roof angles.
RoofLines detect_roof_lines(const ImageBuffer& gray, const RoofConfig& cfg = {});

// Overlays return a BGR copy of `img` with features painted pure red.
ImageBuffer overlay_mask(const ImageBuffer& img, const ImageBuffer& mask);
ImageBuffer overlay_lines(const ImageBuffer& img, const std::vector<Line>& lines);
ImageBuffer overlay_circles(const ImageBuffer& img, const std::vector<Circle>& circles);
ImageBuffer overlay_corners(const ImageBuffer& img, const std::vector<Corner>& corners);

/// Counterclockwise rotation about the image center with cubic B-spline
/// interpolation; the canvas grows to hold the rotated extent, uncovered pixels are 0.
ImageBuffer rotate(const ImageBuffer& img, double angle_deg);

struct CueAngle {
    double angle_deg = 0.0;
    double theta_avg = 0.0;  // radians
    std::vector<Line> lines;
};

/// Fixed-threshold color Canny, Hough at 1 px / 1 degree, then 90 - mean(theta) in degrees.
CueAngle estimate_cue_angle(const ImageBuffer& rgb, double canny_lower, double canny_upper, int votes);

struct CueConfig {
    int r_min = 25;
    int r_max = 33;
    int circle_votes = 60;
    int circle_margin = 2;
    int cloth_peak = 49;
    double canny_lower = 100.0;
    double canny_upper = 200.0;
    int line_votes = 200;
    double parallel_tolerance_deg = 5.0;
    double min_strip_width = 3.0;
    double strip_margin = 2.0;
};

struct CueIsolation {
    ImageBuffer image;   // Gray, rotated by -angle
    ImageBuffer masked;  // Gray, before rotation
    double angle_deg = 0.0;
    std::vector<Circle> circles;
    Line strip_a;
    Line strip_b;
};

CueIsolation isolate_cue(const ImageBuffer& rgb, const CueConfig& cfg = {});

}  // namespace spatialkit
