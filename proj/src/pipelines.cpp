#include "spatialkit/pipelines.hpp"

#include <cmath>
#include <sstream>

#include "spatialkit/enhance.hpp"

namespace spatialkit {

namespace {

void check_range(const char* name, double v, ParamRange r, bool override_ranges) {
    if (!std::isfinite(v)) throw ArgumentError(std::string(name) + " must be finite");
    if (override_ranges) return;
    // grid-generated values may sit an ulp outside a decimal bound
    constexpr double slack = 1e-9;
    if (v < r.min - slack || v > r.max + slack) {
        std::ostringstream os;
        os << name << " = " << v << " outside [" << r.min << ", " << r.max << "]";
        throw ArgumentError(os.str());
    }
}

}  // namespace

void ForwardParams::validate(bool override_ranges) const {
    check_range("alpha", alpha, kAlphaRange, override_ranges);
    check_range("gamma", gamma, kForwardGammaRange, override_ranges);
    check_range("beta", beta, kBetaRange, override_ranges);
}

void ReverseParams::validate(bool override_ranges) const {
    check_range("gamma", gamma, kReverseGammaRange, override_ranges);
}

ImageBuffer forward_pipeline(const ImageBuffer& img, const ForwardParams& p, bool override_ranges) {
    require_space(img, ColorSpace::Gray, "forward_pipeline");
    p.validate(override_ranges);
    const ImageBuffer sharpened = convolve(img, unsharp_kernel(p.alpha));
    return amplify_noise(complement(gamma_correct(sharpened, p.gamma)), p.beta);
}

ImageBuffer reverse_pipeline(const ImageBuffer& img, const ReverseParams& p, bool override_ranges) {
    require_space(img, ColorSpace::Gray, "reverse_pipeline");
    p.validate(override_ranges);
    return gamma_correct(complement(gaussian_blur(img, 7)), p.gamma);
}

std::string_view to_string(Direction d) { return d == Direction::Forward ? "forward" : "reverse"; }

Direction direction_from_string(std::string_view name) {
    if (name == "forward") return Direction::Forward;
    if (name == "reverse") return Direction::Reverse;
    throw ArgumentError("direction must be 'forward' or 'reverse', got '" + std::string(name) + "'");
}

std::vector<double> GridAxis::values() const {
    if (!(step > 0.0)) throw ArgumentError("grid axis '" + name + "' needs step > 0");
    if (!(min <= max)) throw ArgumentError("grid axis '" + name + "' needs min <= max");
    const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(std::round((min + i * step) * 1e9) / 1e9);
    return out;
}

GridSpec GridSpec::forward_default() {
    return {{{"alpha", kAlphaRange.min, kAlphaRange.max, 0.05},
             {"gamma", kForwardGammaRange.min, kForwardGammaRange.max, 0.01},
             {"beta", kBetaRange.min, kBetaRange.max, 0.05}}};
}

GridSpec GridSpec::reverse_default() {
    return {{{"gamma", kReverseGammaRange.min, kReverseGammaRange.max, 0.05}}};
}

GridSpec GridSpec::default_for(Direction d) { return d == Direction::Forward ? forward_default() : reverse_default(); }

const GridAxis* GridSpec::find(std::string_view name) const {
    for (const GridAxis& a : axes)
        if (a.name == name) return &a;
    return nullptr;
}

void GridSpec::validate(Direction d) const {
    const std::vector<std::string> expected =
        d == Direction::Forward ? std::vector<std::string>{"alpha", "gamma", "beta"} : std::vector<std::string>{"gamma"};
    if (axes.size() != expected.size())
        throw ArgumentError("grid for " + std::string(to_string(d)) + " needs exactly " +
                            std::to_string(expected.size()) + " axes");
    for (std::size_t i = 0; i < axes.size(); ++i) {
        if (axes[i].name != expected[i])
            throw ArgumentError("grid axis " + std::to_string(i) + " must be '" + expected[i] + "', got '" +
                                axes[i].name + "'");
        axes[i].values();
    }
}

std::size_t GridSpec::size() const {
    if (axes.empty()) return 0;
    std::size_t n = 1;
    for (const GridAxis& a : axes) n *= a.values().size();
    return n;
}

ForwardParams forward_params_from(const GridSpec& grid, const std::vector<double>& values) {
    grid.validate(Direction::Forward);
    return {values.at(0), values.at(1), values.at(2)};
}

ReverseParams reverse_params_from(const GridSpec& grid, const std::vector<double>& values) {
    grid.validate(Direction::Reverse);
    return {values.at(0)};
}

TuneResult tune(const ImageBuffer& src, const ImageBuffer& target, Direction direction, const GridSpec& grid,
                double w) {
    if (grid.axes.empty()) throw ArgumentError("tune: empty grid");
    grid.validate(direction);
    if (src.width() != target.width() || src.height() != target.height())
        throw ArgumentError("tune: source and target dimensions differ");
    if (!(w >= 0.0 && w <= 1.0)) throw ArgumentError("blend weight w must lie in [0,1]");

    std::vector<std::vector<double>> axis_values;
    for (const GridAxis& a : grid.axes) axis_values.push_back(a.values());

    TuneResult result;
    result.direction = direction;
    result.grid = grid;

    // odometer over the axes, last axis fastest
    std::vector<std::size_t> idx(axis_values.size(), 0);
    bool have_best = false;
    while (true) {
        std::vector<double> point(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) point[i] = axis_values[i][idx[i]];

        const ImageBuffer out = direction == Direction::Forward
                                    ? forward_pipeline(src, forward_params_from(grid, point), true)
                                    : reverse_pipeline(src, reverse_params_from(grid, point), true);
        const SimilarityReport report = blended_score(out, target, w);
        if (!have_best || report.blended > result.best.blended) {
            result.best = report;
            result.best_params = point;
            have_best = true;
        }
        result.log.push_back({std::move(point), report});

        std::size_t axis = idx.size();
        while (axis > 0) {
            --axis;
            if (++idx[axis] < axis_values[axis].size()) break;
            idx[axis] = 0;
            if (axis == 0) return result;
        }
    }
}

CueAlignment cue_align(const ImageBuffer& rgb, const CueConfig& cfg) {
    CueAlignment out;
    out.angle_deg = estimate_cue_angle(rgb, cfg.canny_lower, cfg.canny_upper, cfg.line_votes).angle_deg;
    out.image = rotate(rgb, -out.angle_deg);
    return out;
}

}  // namespace spatialkit
