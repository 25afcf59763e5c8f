#pragma once

#include <string>
#include <vector>

#include "spatialkit/geometry.hpp"
#include "spatialkit/metrics.hpp"

namespace spatialkit {

/// Closed interval a parameter must lie in unless range checks are overridden.
struct ParamRange {
    double min;
    double max;
};

inline constexpr ParamRange kAlphaRange{0.05, 0.5};
inline constexpr ParamRange kForwardGammaRange{0.15, 0.35};
inline constexpr ParamRange kBetaRange{1.6, 2.1};
inline constexpr ParamRange kReverseGammaRange{2.5, 5.0};

struct ForwardParams {
    double alpha = 0.45;
    double gamma = 0.26;
    double beta = 1.8;

    /// Throws ArgumentError when a value leaves its documented range (unless `override_ranges`).
    void validate(bool override_ranges = false) const;
};

struct ReverseParams {
    double gamma = 4.05;

    void validate(bool override_ranges = false) const;
};

/// unsharp(alpha) -> gamma -> complement -> noise amplification(beta)
ImageBuffer forward_pipeline(const ImageBuffer& img, const ForwardParams& p, bool override_ranges = false);

/// 7x7 gaussian blur -> complement -> gamma
ImageBuffer reverse_pipeline(const ImageBuffer& img, const ReverseParams& p, bool override_ranges = false);

enum class Direction { Forward, Reverse };

std::string_view to_string(Direction d);
Direction direction_from_string(std::string_view name);

struct GridAxis {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    double step = 0.0;

    /// min, min+step, ... up to max; values are snapped to 1e-9 so decimal
    /// steps land on the same doubles as their literals.
    std::vector<double> values() const;
};

/// Axes in lexicographic evaluation order: alpha, gamma, beta (forward) or gamma (reverse).
struct GridSpec {
    std::vector<GridAxis> axes;

    static GridSpec forward_default();
    static GridSpec reverse_default();
    static GridSpec default_for(Direction d);

    const GridAxis* find(std::string_view name) const;
    void validate(Direction d) const;
    std::size_t size() const;
};

/// One evaluated grid point; `params` follows the axis order of the grid.
struct TuneEntry {
    std::vector<double> params;
    SimilarityReport report;
};

struct TuneResult {
    Direction direction = Direction::Forward;
    GridSpec grid;
    std::vector<double> best_params;
    SimilarityReport best;
    std::vector<TuneEntry> log;
};

ForwardParams forward_params_from(const GridSpec& grid, const std::vector<double>& values);
ReverseParams reverse_params_from(const GridSpec& grid, const std::vector<double>& values);

/// Exhaustive grid search for the parameters whose pipeline output best matches
/// `target`. Ties go to the first point in lexicographic grid order.
TuneResult tune(const ImageBuffer& src, const ImageBuffer& target, Direction direction, const GridSpec& grid,
                double w = 0.5);

struct CueAlignment {
    ImageBuffer image;
    double angle_deg = 0.0;
};

/// Estimates the cue angle and rotates the image by its negative.
CueAlignment cue_align(const ImageBuffer& rgb, const CueConfig& cfg = {});

}  // namespace spatialkit
