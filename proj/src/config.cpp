#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "spatialkit/cli.hpp"
#include "spatialkit/serialize.hpp"

namespace spatialkit::cli {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void type_error(const std::string& key, const char* expected, const std::string& value) {
    throw ConfigError("config key '" + key + "' expects " + expected + ", got '" + value + "'");
}

int parse_int(const std::string& key, const std::string& value) {
    int out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) type_error(key, "an integer", value);
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(out))
        type_error(key, "a number", value);
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    type_error(key, "a boolean (true/false)", value);
}

GridAxis parse_axis(const std::string& key, const std::string& name, const std::string& value) {
    std::vector<double> parts;
    std::stringstream ss(value);
    for (std::string item; std::getline(ss, item, ',');) parts.push_back(parse_double(key, trim(item)));
    if (parts.size() != 3) type_error(key, "'min, max, step'", value);
    return {name, parts[0], parts[1], parts[2]};
}

using Setter = std::function<void(CommandConfig&, const std::string& key, const std::string& value)>;

template <class T>
Setter set_int(T CommandConfig::*field) {
    return [field](CommandConfig& c, const std::string& k, const std::string& v) { c.*field = parse_int(k, v); };
}

Setter set_double(double CommandConfig::*field) {
    return [field](CommandConfig& c, const std::string& k, const std::string& v) { c.*field = parse_double(k, v); };
}

Setter set_string(std::string CommandConfig::*field) {
    return [field](CommandConfig& c, const std::string&, const std::string& v) { c.*field = v; };
}

Setter set_path(std::filesystem::path CommandConfig::*field) {
    return [field](CommandConfig& c, const std::string&, const std::string& v) { c.*field = v; };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"command", set_string(&CommandConfig::command)},
        {"action", set_string(&CommandConfig::action)},
        {"input", set_path(&CommandConfig::input)},
        {"input2", set_path(&CommandConfig::input2)},
        {"output", set_path(&CommandConfig::output)},
        {"report", set_path(&CommandConfig::report)},
        {"preset", set_string(&CommandConfig::preset)},
        {"map", set_path(&CommandConfig::map)},
        {"mode", set_string(&CommandConfig::mode)},
        {"v", set_int(&CommandConfig::v)},
        {"kind", set_string(&CommandConfig::kind)},
        {"size", set_int(&CommandConfig::size)},
        {"alpha", set_double(&CommandConfig::alpha)},
        {"gamma", [](CommandConfig& c, const std::string& k, const std::string& v) { c.gamma = parse_double(k, v); }},
        {"beta", set_double(&CommandConfig::beta)},
        {"direction", set_string(&CommandConfig::direction)},
        {"grid_file", set_path(&CommandConfig::grid_file)},
        {"override_ranges",
         [](CommandConfig& c, const std::string& k, const std::string& v) { c.override_ranges = parse_bool(k, v); }},
        {"w", set_double(&CommandConfig::w)},
        {"sigma", set_double(&CommandConfig::sigma)},
        {"median_size",
         [](CommandConfig& c, const std::string& k, const std::string& v) { c.median_size = parse_int(k, v); }},
        {"rho", set_double(&CommandConfig::rho)},
        {"theta", set_double(&CommandConfig::theta)},
        {"votes", set_int(&CommandConfig::votes)},
        {"r_min", set_int(&CommandConfig::r_min)},
        {"r_max", set_int(&CommandConfig::r_max)},
        {"circle_votes", set_int(&CommandConfig::circle_votes)},
        {"harris_k", set_double(&CommandConfig::harris_k)},
        {"harris_rel", set_double(&CommandConfig::harris_rel)},
        {"harris_median", set_int(&CommandConfig::harris_median)},
        {"door_ratio", set_double(&CommandConfig::door_ratio)},
        {"canny_lo", set_double(&CommandConfig::canny_lo)},
        {"canny_hi", set_double(&CommandConfig::canny_hi)},
        {"line_votes", set_int(&CommandConfig::line_votes)},
        {"cloth_peak", set_int(&CommandConfig::cloth_peak)},
    };
    return table;
}

const std::map<std::string, std::set<std::string>>& commands() {
    static const std::map<std::string, std::set<std::string>> table = {
        {"quantize", {}},
        {"equalize", {}},
        {"brighten", {}},
        {"sharpen", {}},
        {"filter", {}},
        {"pipeline", {"forward", "reverse", "tune"}},
        {"features", {"edges", "lines", "circles", "corners", "windows"}},
        {"cue", {"angle", "align", "isolate"}},
        {"compare", {}},
    };
    return table;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

void require_existing(const std::filesystem::path& p, const char* key) {
    if (p.empty()) throw ConfigError(std::string("missing required key '") + key + "'");
    if (!std::filesystem::exists(p))
        throw IoError(IoError::Kind::MissingFile, std::string(key) + ": no such file '" + p.string() + "'");
}

void require_range(const char* key, double v, ParamRange r) {
    if (v < r.min - 1e-9 || v > r.max + 1e-9) {
        std::ostringstream os;
        os << "'" << key << "' = " << v << " outside [" << r.min << ", " << r.max << "]";
        throw ConfigError(os.str());
    }
}

void require_odd(const char* key, int v, int min) {
    if (v < min || v % 2 == 0)
        throw ConfigError(std::string("'") + key + "' must be an odd integer >= " + std::to_string(min) + ", got " +
                          std::to_string(v));
}

ParamRange range_for(Direction d, const std::string& axis) {
    if (axis == "alpha") return kAlphaRange;
    if (axis == "beta") return kBetaRange;
    return d == Direction::Forward ? kForwardGammaRange : kReverseGammaRange;
}

}  // namespace

double CommandConfig::effective_gamma() const {
    if (gamma) return *gamma;
    return action == "reverse" ? ReverseParams{}.gamma : ForwardParams{}.gamma;
}

GridSpec CommandConfig::effective_grid() const {
    GridSpec out = GridSpec::default_for(direction_from_string(direction));
    if (!grid) return out;
    for (const GridAxis& a : grid->axes) {
        bool found = false;
        for (GridAxis& slot : out.axes)
            if (slot.name == a.name) {
                slot = a;
                found = true;
            }
        if (!found) throw ConfigError("grid axis '" + a.name + "' does not apply to direction '" + direction + "'");
    }
    return out;
}

GridSpec load_grid(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(IoError::Kind::MissingFile, "cannot read grid file '" + path.string() + "'");
    try {
        return grid_from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw ConfigError("grid file '" + path.string() + "': " + e.what());
    } catch (const ArgumentError& e) {
        throw ConfigError("grid file '" + path.string() + "': " + e.what());
    }
}

CommandConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(IoError::Kind::MissingFile, "cannot read config '" + path.string() + "'");

    CommandConfig cfg;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));

        if (key.starts_with("grid.")) {
            const std::string axis = key.substr(5);
            if (axis != "alpha" && axis != "gamma" && axis != "beta")
                throw ConfigError("unknown config key '" + key + "'");
            if (!cfg.grid) cfg.grid.emplace();
            cfg.grid->axes.push_back(parse_axis(key, axis, value));
            continue;
        }
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError("unknown config key '" + key + "'");
        it->second(cfg, key, value);
    }
    if (!cfg.grid_file.empty()) {
        if (cfg.grid) throw ConfigError("'grid_file' and 'grid.*' keys are mutually exclusive");
        if (std::filesystem::exists(cfg.grid_file)) cfg.grid = load_grid(cfg.grid_file);
    }
    validate(cfg);
    return cfg;
}

void validate(const CommandConfig& cfg) {
    // every subcommand reads an image, so the input path is checked first
    require_existing(cfg.input, "input");
    require(!cfg.command.empty(), "missing required key 'command'");
    const auto cmd = commands().find(cfg.command);
    require(cmd != commands().end(), "unknown command '" + cfg.command + "'");
    if (!cmd->second.empty())
        require(cmd->second.contains(cfg.action), "command '" + cfg.command + "' needs an action, got '" +
                                                       cfg.action + "'");

    const std::string& c = cfg.command;
    const std::string& a = cfg.action;
    const bool writes_image = !(c == "compare" || (c == "cue" && a == "angle") || (c == "pipeline" && a == "tune"));
    if (writes_image) require(!cfg.output.empty(), "missing required key 'output'");
    if (c == "compare" || (c == "pipeline" && a == "tune")) require_existing(cfg.input2, "input2");

    require(cfg.w >= 0.0 && cfg.w <= 1.0, "'w' must lie in [0,1]");

    if (c == "quantize") {
        if (cfg.map.empty())
            require(cfg.preset == "paper8", "unknown quantization preset '" + cfg.preset + "'");
        else
            require_existing(cfg.map, "map");
    } else if (c == "equalize") {
        require(cfg.mode == "rgb" || cfg.mode == "ycrcb", "'mode' must be 'rgb' or 'ycrcb'");
    } else if (c == "brighten") {
        require(cfg.v >= 0 && cfg.v <= 255, "'v' must lie in [0,255]");
    } else if (c == "filter") {
        require(cfg.kind == "gaussian" || cfg.kind == "median", "'kind' must be 'gaussian' or 'median'");
        require_odd("size", cfg.size, 1);
    } else if (c == "pipeline") {
        if (a == "forward") {
            ForwardParams p{cfg.alpha, cfg.effective_gamma(), cfg.beta};
            try {
                p.validate(cfg.override_ranges);
            } catch (const ArgumentError& e) {
                throw ConfigError(e.what());
            }
        } else if (a == "reverse") {
            try {
                ReverseParams{cfg.effective_gamma()}.validate(cfg.override_ranges);
            } catch (const ArgumentError& e) {
                throw ConfigError(e.what());
            }
        } else {
            Direction d{};
            try {
                d = direction_from_string(cfg.direction);
            } catch (const ArgumentError& e) {
                throw ConfigError(e.what());
            }
            if (!cfg.grid_file.empty()) require_existing(cfg.grid_file, "grid_file");
            const GridSpec grid = cfg.effective_grid();
            try {
                grid.validate(d);
            } catch (const ArgumentError& e) {
                throw ConfigError(e.what());
            }
            if (!cfg.override_ranges)
                for (const GridAxis& axis : grid.axes) {
                    const ParamRange r = range_for(d, axis.name);
                    require_range(("grid." + axis.name + ".min").c_str(), axis.min, r);
                    require_range(("grid." + axis.name + ".max").c_str(), axis.max, r);
                }
        }
    } else if (c == "features") {
        require(cfg.sigma >= 0.0 && cfg.sigma <= 1.0, "'sigma' must lie in [0,1]");
        if (cfg.median_size) require_odd("median_size", *cfg.median_size, 1);
        require(cfg.rho > 0.0, "'rho' must be positive");
        require(cfg.theta > 0.0 && cfg.theta < 180.0, "'theta' must lie in (0,180)");
        require(cfg.votes >= 1, "'votes' must be >= 1");
        require(cfg.r_min >= 1 && cfg.r_max >= cfg.r_min, "'r_min'/'r_max' must satisfy 1 <= r_min <= r_max");
        require(cfg.circle_votes >= 1, "'circle_votes' must be >= 1");
        require(cfg.harris_k > 0.0, "'harris_k' must be positive");
        require(cfg.harris_rel >= 0.0 && cfg.harris_rel <= 1.0, "'harris_rel' must lie in [0,1]");
        require_odd("harris_median", cfg.harris_median, 1);
        require(cfg.door_ratio > 0.0, "'door_ratio' must be positive");
    } else if (c == "cue") {
        require(cfg.canny_lo >= 0.0 && cfg.canny_hi >= cfg.canny_lo, "'canny_lo'/'canny_hi' must satisfy 0 <= lo <= hi");
        require(cfg.line_votes >= 1, "'line_votes' must be >= 1");
        require(cfg.r_min >= 1 && cfg.r_max >= cfg.r_min, "'r_min'/'r_max' must satisfy 1 <= r_min <= r_max");
        require(cfg.circle_votes >= 1, "'circle_votes' must be >= 1");
        require(cfg.cloth_peak >= 0 && cfg.cloth_peak <= 255, "'cloth_peak' must lie in [0,255]");
    }
}

}  // namespace spatialkit::cli
