#include "spatialkit/serialize.hpp"

namespace spatialkit {

json to_json(const QuantizationMap& map) {
    return {{"thresholds", map.thresholds()}, {"outputs", map.outputs()}};
}

QuantizationMap quantization_map_from_json(const json& j) {
    if (!j.is_object() || !j.contains("thresholds") || !j.contains("outputs"))
        throw ArgumentError("quantization map JSON needs 'thresholds' and 'outputs' arrays");
    auto bytes = [](const json& arr, const char* key) {
        if (!arr.is_array()) throw ArgumentError(std::string("'") + key + "' must be an array");
        std::vector<std::uint8_t> out;
        for (const json& v : arr) {
            if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() > 255)
                throw ArgumentError(std::string("'") + key + "' entries must be integers in [0,255]");
            out.push_back(static_cast<std::uint8_t>(v.get<int>()));
        }
        return out;
    };
    return QuantizationMap(bytes(j["thresholds"], "thresholds"), bytes(j["outputs"], "outputs"));
}

json to_json(const Line& line) {
    return {{"rho", line.rho}, {"theta_deg", line.theta_deg()}, {"votes", line.votes}};
}

json to_json(const Circle& circle) {
    return {{"cx", circle.cx}, {"cy", circle.cy}, {"r", circle.r}, {"votes", circle.votes}};
}

json to_json(const Corner& corner) { return {{"x", corner.x}, {"y", corner.y}, {"response", corner.response}}; }

json to_json(const Region& region) {
    return {{"label", region.label},
            {"x", region.min_x},
            {"y", region.min_y},
            {"width", region.width()},
            {"height", region.height()},
            {"area", region.area},
            {"ratio", region.ratio()}};
}

json to_json(const FeatureSet& features) {
    json out = {{"lines", json::array()}, {"circles", json::array()}, {"corners", json::array()}};
    for (const auto& l : features.lines) out["lines"].push_back(to_json(l));
    for (const auto& c : features.circles) out["circles"].push_back(to_json(c));
    for (const auto& c : features.corners) out["corners"].push_back(to_json(c));
    return out;
}

json to_json(const SimilarityReport& report) {
    return {{"ssim", report.ssim}, {"nmi", report.nmi}, {"blended", report.blended}, {"w", report.w}};
}

json to_json(const ForwardParams& p) { return {{"alpha", p.alpha}, {"gamma", p.gamma}, {"beta", p.beta}}; }

json to_json(const ReverseParams& p) { return {{"gamma", p.gamma}}; }

json to_json(const GridSpec& grid) {
    json axes = json::array();
    for (const GridAxis& a : grid.axes)
        axes.push_back({{"name", a.name}, {"min", a.min}, {"max", a.max}, {"step", a.step}});
    return axes;
}

GridSpec grid_from_json(const json& j) {
    if (!j.is_array()) throw ArgumentError("grid JSON must be an array of axes");
    GridSpec grid;
    for (const json& a : j) {
        for (const char* key : {"name", "min", "max", "step"})
            if (!a.contains(key)) throw ArgumentError(std::string("grid axis missing '") + key + "'");
        for (const auto& [key, _] : a.items())
            if (key != "name" && key != "min" && key != "max" && key != "step")
                throw ArgumentError("unknown grid axis key '" + key + "'");
        if (!a["name"].is_string() || !a["min"].is_number() || !a["max"].is_number() || !a["step"].is_number())
            throw ArgumentError("grid axis needs string 'name' and numeric 'min', 'max', 'step'");
        grid.axes.push_back({a["name"].get<std::string>(), a["min"].get<double>(), a["max"].get<double>(),
                             a["step"].get<double>()});
    }
    return grid;
}

namespace {

json named_params(const GridSpec& grid, const std::vector<double>& values) {
    json out = json::object();
    for (std::size_t i = 0; i < grid.axes.size() && i < values.size(); ++i) out[grid.axes[i].name] = values[i];
    return out;
}

}  // namespace

json to_json(const TuneResult& result) {
    json best = to_json(result.best);
    best["params"] = named_params(result.grid, result.best_params);
    json log = json::array();
    for (const TuneEntry& e : result.log) {
        json entry = to_json(e.report);
        entry["params"] = named_params(result.grid, e.params);
        log.push_back(std::move(entry));
    }
    return {{"direction", std::string(to_string(result.direction))},
            {"grid", to_json(result.grid)},
            {"best", std::move(best)},
            {"log", std::move(log)}};
}

}  // namespace spatialkit
