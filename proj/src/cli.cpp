#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "spatialkit/cli.hpp"
#include "spatialkit/io.hpp"
#include "spatialkit/serialize.hpp"

namespace spatialkit::cli {

namespace {

ImageBuffer as_gray(const ImageBuffer& img) {
    return img.space() == ColorSpace::Gray ? img : convert_color(img, ColorSpace::Gray);
}

ImageBuffer as_bgr(const ImageBuffer& img) {
    return img.space() == ColorSpace::BGR ? img : convert_color(img, ColorSpace::BGR);
}

ImageBuffer as_rgb(const ImageBuffer& img) {
    return img.space() == ColorSpace::RGB ? img : convert_color(img, ColorSpace::RGB);
}

// Applies a single-channel filter to every plane of `img`.
template <class Fn>
ImageBuffer per_channel(const ImageBuffer& img, Fn fn) {
    if (img.channels() == 1) return fn(img.with_space(ColorSpace::Gray));
    std::vector<ImageBuffer> planes = split(img);
    for (ImageBuffer& p : planes) p = fn(p);
    return merge(planes, img.space());
}

void write_report(const json& report, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError(IoError::Kind::WriteFailed, "cannot write report '" + path.string() + "'");
    f << report.dump(2) << '\n';
    if (!f) throw IoError(IoError::Kind::WriteFailed, "cannot write report '" + path.string() + "'");
}

json base_report(const CommandConfig& cfg) {
    json r = {{"command", cfg.command}, {"input", cfg.input.generic_string()}};
    if (!cfg.action.empty()) r["action"] = cfg.action;
    if (!cfg.output.empty()) r["output"] = cfg.output.generic_string();
    return r;
}

RoofConfig roof_config(const CommandConfig& cfg) {
    RoofConfig rc;
    rc.median_side = cfg.median_size.value_or(rc.median_side);
    rc.canny_sigma = cfg.sigma;
    rc.rho_res = cfg.rho;
    rc.theta_res_deg = cfg.theta;
    rc.votes = cfg.votes;
    return rc;
}

WindowConfig window_config(const CommandConfig& cfg) {
    WindowConfig wc;
    wc.median_side = cfg.median_size.value_or(wc.median_side);
    wc.canny_sigma = cfg.sigma;
    wc.harris_k = cfg.harris_k;
    wc.harris_rel = cfg.harris_rel;
    wc.door_ratio = cfg.door_ratio;
    return wc;
}

CueConfig cue_config(const CommandConfig& cfg) {
    CueConfig cc;
    cc.r_min = cfg.r_min;
    cc.r_max = cfg.r_max;
    cc.circle_votes = cfg.circle_votes;
    cc.cloth_peak = cfg.cloth_peak;
    cc.canny_lower = cfg.canny_lo;
    cc.canny_upper = cfg.canny_hi;
    cc.line_votes = cfg.line_votes;
    return cc;
}

json cue_params(const CueConfig& cc) {
    return {{"r_min", cc.r_min},
            {"r_max", cc.r_max},
            {"circle_votes", cc.circle_votes},
            {"circle_margin", cc.circle_margin},
            {"cloth_peak", cc.cloth_peak},
            {"canny_lo", cc.canny_lower},
            {"canny_hi", cc.canny_upper},
            {"line_votes", cc.line_votes},
            {"parallel_tolerance_deg", cc.parallel_tolerance_deg},
            {"min_strip_width", cc.min_strip_width},
            {"strip_margin", cc.strip_margin}};
}

json run_features(const CommandConfig& cfg, const ImageBuffer& img, ImageBuffer& out) {
    json r = base_report(cfg);
    const std::string& a = cfg.action;
    if (a == "edges") {
        const int side = cfg.median_size.value_or(RoofConfig{}.median_side);
        const AdaptiveCanny c = canny_adaptive(as_gray(img), cfg.sigma, side);
        out = c.edges;
        r["params"] = {{"sigma", cfg.sigma}, {"median_size", side}};
        r["median"] = c.median;
        r["thresholds"] = {{"lower", c.thresholds.lower}, {"upper", c.thresholds.upper}};
        r["edge_pixels"] = std::count(c.edges.data().begin(), c.edges.data().end(), 255);
    } else if (a == "lines") {
        const RoofConfig rc = roof_config(cfg);
        const RoofLines roof = detect_roof_lines(as_gray(img), rc);
        out = overlay_lines(img, roof.lines);
        r["params"] = {{"sigma", rc.canny_sigma},   {"median_size", rc.median_side}, {"diagonal_side", rc.diagonal_side},
                       {"rho", rc.rho_res},         {"theta", rc.theta_res_deg},     {"votes", rc.votes}};
        r["features"] = to_json(FeatureSet{roof.lines, {}, {}});
        r["roof_angles_deg"] = roof.angles_deg;
    } else if (a == "circles") {
        const std::vector<Circle> circles = hough_circles(as_gray(img), cfg.r_min, cfg.r_max, cfg.circle_votes);
        out = overlay_circles(img, circles);
        const CircleSearch cs;
        r["params"] = {{"r_min", cfg.r_min},
                       {"r_max", cfg.r_max},
                       {"circle_votes", cfg.circle_votes},
                       {"canny_lo", cs.canny_lower},
                       {"canny_hi", cs.canny_upper}};
        r["features"] = to_json(FeatureSet{{}, circles, {}});
    } else if (a == "corners") {
        const CornerSet cs = harris(as_gray(img), cfg.harris_k, cfg.harris_rel, cfg.harris_median);
        out = overlay_corners(img, cs.points);
        r["params"] = {{"harris_k", cfg.harris_k}, {"harris_rel", cfg.harris_rel}, {"harris_median", cfg.harris_median}};
        r["response_max"] = cs.response_max;
        r["threshold"] = cs.threshold;
        r["features"] = to_json(FeatureSet{{}, {}, cs.points});
    } else {
        const WindowConfig wc = window_config(cfg);
        const WindowLocalization wl = localize_windows(as_bgr(img), wc);
        out = wl.overlay;
        r["params"] = {{"median_size", wc.median_side},
                       {"sigma", wc.canny_sigma},
                       {"diagonal_side", wc.diagonal_side},
                       {"harris_k", wc.harris_k},
                       {"harris_rel", wc.harris_rel},
                       {"densify_dilate", wc.densify_dilate},
                       {"densify_open", wc.densify_open},
                       {"reconstruct_radius", wc.reconstruct_radius},
                       {"reconstruct_iterations", wc.reconstruct_iterations},
                       {"border_side", wc.border_side},
                       {"cleanup_small", wc.cleanup_small},
                       {"cleanup_large", wc.cleanup_large},
                       {"door_ratio", wc.door_ratio}};
        json windows = json::array(), doors = json::array();
        for (const Region& reg : wl.windows) windows.push_back(to_json(reg));
        for (const Region& reg : wl.doors) doors.push_back(to_json(reg));
        r["windows"] = std::move(windows);
        r["doors"] = std::move(doors);
    }
    return r;
}

json run_cue(const CommandConfig& cfg, const ImageBuffer& img, ImageBuffer& out) {
    json r = base_report(cfg);
    const CueConfig cc = cue_config(cfg);
    const ImageBuffer rgb = as_rgb(img);
    if (cfg.action == "angle") {
        const CueAngle ca = estimate_cue_angle(rgb, cc.canny_lower, cc.canny_upper, cc.line_votes);
        r["params"] = {{"canny_lo", cc.canny_lower}, {"canny_hi", cc.canny_upper}, {"line_votes", cc.line_votes}};
        r["angle_deg"] = ca.angle_deg;
        r["theta_avg_deg"] = ca.theta_avg * 180.0 / std::numbers::pi;
        r["features"] = to_json(FeatureSet{ca.lines, {}, {}});
    } else if (cfg.action == "align") {
        const CueAlignment al = cue_align(rgb, cc);
        out = al.image;
        r["params"] = {{"canny_lo", cc.canny_lower}, {"canny_hi", cc.canny_upper}, {"line_votes", cc.line_votes}};
        r["angle_deg"] = al.angle_deg;
    } else {
        const CueIsolation iso = isolate_cue(rgb, cc);
        out = iso.image;
        r["params"] = cue_params(cc);
        r["angle_deg"] = iso.angle_deg;
        r["features"] = to_json(FeatureSet{{iso.strip_a, iso.strip_b}, iso.circles, {}});
    }
    return r;
}

json run_pipeline(const CommandConfig& cfg, const ImageBuffer& img, ImageBuffer& out) {
    json r = base_report(cfg);
    const ImageBuffer gray = as_gray(img);
    if (cfg.action == "forward") {
        const ForwardParams p{cfg.alpha, cfg.effective_gamma(), cfg.beta};
        out = forward_pipeline(gray, p, cfg.override_ranges);
        r["params"] = to_json(p);
        r["override_ranges"] = cfg.override_ranges;
    } else if (cfg.action == "reverse") {
        const ReverseParams p{cfg.effective_gamma()};
        out = reverse_pipeline(gray, p, cfg.override_ranges);
        r["params"] = to_json(p);
        r["override_ranges"] = cfg.override_ranges;
    } else {
        const Direction d = direction_from_string(cfg.direction);
        const ImageBuffer target = as_gray(load_image(cfg.input2));
        const TuneResult result = tune(gray, target, d, cfg.effective_grid(), cfg.w);
        if (!cfg.output.empty()) {
            out = d == Direction::Forward
                      ? forward_pipeline(gray, forward_params_from(result.grid, result.best_params), true)
                      : reverse_pipeline(gray, reverse_params_from(result.grid, result.best_params), true);
        }
        r["target"] = cfg.input2.generic_string();
        r["w"] = cfg.w;
        r["override_ranges"] = cfg.override_ranges;
        r["tune"] = to_json(result);
    }
    return r;
}

}  // namespace

int execute(const CommandConfig& cfg, std::ostream& out, std::ostream&) {
    const ImageBuffer img = load_image(cfg.input);
    const std::string& c = cfg.command;
    ImageBuffer result(1, 1, ColorSpace::Gray);
    bool have_image = true;
    json report = base_report(cfg);

    if (c == "quantize") {
        const QuantizationMap map = cfg.map.empty() ? QuantizationMap::preset(cfg.preset) : [&] {
            std::ifstream f(cfg.map);
            try {
                return quantization_map_from_json(json::parse(f));
            } catch (const json::exception& e) {
                throw ArgumentError("map file '" + cfg.map.string() + "': " + e.what());
            }
        }();
        result = step_quantize(as_gray(img), map);
        report["params"] = {{"preset", cfg.map.empty() ? cfg.preset : "custom"}, {"map", to_json(map)}};
    } else if (c == "equalize") {
        result = cfg.mode == "rgb" ? equalize_rgb(as_rgb(img)) : equalize_ycrcb(as_bgr(img));
        report["params"] = {{"mode", cfg.mode}};
    } else if (c == "brighten") {
        result = hsv_brighten(as_bgr(img), cfg.v);
        report["params"] = {{"v", cfg.v}};
    } else if (c == "sharpen") {
        result = sharpen(img);
        report["params"] = json::object();
    } else if (c == "filter") {
        result = cfg.kind == "gaussian"
                     ? per_channel(img, [&](const ImageBuffer& p) { return gaussian_blur(p, cfg.size); })
                     : per_channel(img, [&](const ImageBuffer& p) { return median_filter(p, cfg.size); });
        report["params"] = {{"kind", cfg.kind}, {"size", cfg.size}};
        if (cfg.kind == "gaussian") report["params"]["sigma"] = gaussian_sigma_for(cfg.size);
    } else if (c == "pipeline") {
        report = run_pipeline(cfg, img, result);
        have_image = !cfg.output.empty();
    } else if (c == "features") {
        report = run_features(cfg, img, result);
    } else if (c == "cue") {
        report = run_cue(cfg, img, result);
        have_image = cfg.action != "angle";
    } else {
        const ImageBuffer other = load_image(cfg.input2);
        report["input2"] = cfg.input2.generic_string();
        report["similarity"] = to_json(blended_score(as_gray(img), as_gray(other), cfg.w));
        have_image = false;
    }

    if (have_image && !cfg.output.empty()) save_image(result, cfg.output);
    if (!cfg.report.empty()) write_report(report, cfg.report);
    // commands without an image product print their report
    if (!have_image || c == "compare") out << report.dump(2) << '\n';
    return 0;
}

namespace {

struct Leaf {
    CLI::App* app;
    std::string command;
    std::string action;
};

void add_io(CLI::App* sub, CommandConfig& cfg, bool needs_output) {
    sub->add_option("input", cfg.input, "Input image (.png, .pgm, .ppm)")->required();
    if (needs_output)
        sub->add_option("output", cfg.output, "Output image")->required();
    sub->add_option("--report", cfg.report, "Write a JSON report to this path");
}

void add_feature_opts(CLI::App* sub, CommandConfig& cfg) {
    sub->add_option("--sigma", cfg.sigma, "Adaptive Canny sigma")->capture_default_str();
    sub->add_option("--median-size", cfg.median_size, "Median pre-filter side");
}

}  // namespace

int run(std::span<const std::string> argv, std::ostream& out, std::ostream& err) {
    CommandConfig cfg;
    std::filesystem::path config_path;
    std::filesystem::path grid_path;

    CLI::App app{"Spatial image-processing toolkit", "spatialkit"};
    app.add_option("--config", config_path, "Run the command described by a key = value config file");
    std::vector<Leaf> leaves;

    {
        auto* s = app.add_subcommand("quantize", "Step-quantize intensities");
        add_io(s, cfg, true);
        s->add_option("--preset", cfg.preset, "Quantization preset")->capture_default_str();
        s->add_option("--map", cfg.map, "JSON quantization map {thresholds, outputs}");
        leaves.push_back({s, "quantize", ""});
    }
    {
        auto* s = app.add_subcommand("equalize", "Histogram equalization");
        add_io(s, cfg, true);
        s->add_option("--mode", cfg.mode, "rgb | ycrcb")->capture_default_str();
        leaves.push_back({s, "equalize", ""});
    }
    {
        auto* s = app.add_subcommand("brighten", "Add a constant to the HSV value channel");
        add_io(s, cfg, true);
        s->add_option("--v", cfg.v, "Offset in [0,255]")->capture_default_str();
        leaves.push_back({s, "brighten", ""});
    }
    {
        auto* s = app.add_subcommand("sharpen", "3x3 sharpening kernel");
        add_io(s, cfg, true);
        leaves.push_back({s, "sharpen", ""});
    }
    {
        auto* s = app.add_subcommand("filter", "Gaussian or median filter");
        add_io(s, cfg, true);
        s->add_option("--kind", cfg.kind, "gaussian | median")->capture_default_str();
        s->add_option("--size", cfg.size, "Odd kernel side")->capture_default_str();
        leaves.push_back({s, "filter", ""});
    }
    {
        auto* p = app.add_subcommand("pipeline", "Bidirectional transformation pipelines");
        p->require_subcommand(1);
        auto* f = p->add_subcommand("forward", "unsharp -> gamma -> complement -> noise");
        add_io(f, cfg, true);
        f->add_option("--alpha", cfg.alpha)->capture_default_str();
        f->add_option("--gamma", cfg.gamma, "Default 0.26");
        f->add_option("--beta", cfg.beta)->capture_default_str();
        f->add_flag("--override-ranges", cfg.override_ranges, "Allow parameters outside their documented ranges");
        leaves.push_back({f, "pipeline", "forward"});

        auto* r = p->add_subcommand("reverse", "blur -> complement -> gamma");
        add_io(r, cfg, true);
        r->add_option("--gamma", cfg.gamma, "Default 4.05");
        r->add_flag("--override-ranges", cfg.override_ranges);
        leaves.push_back({r, "pipeline", "reverse"});

        auto* t = p->add_subcommand("tune", "Exhaustive grid search against a target image");
        t->add_option("input", cfg.input, "Source image")->required();
        t->add_option("target", cfg.input2, "Target image")->required();
        t->add_option("--output", cfg.output, "Write the best pipeline output here");
        t->add_option("--report", cfg.report, "Write the JSON tune report here");
        t->add_option("--direction", cfg.direction, "forward | reverse")->capture_default_str();
        t->add_option("--grid", grid_path, "JSON grid spec");
        t->add_option("--w", cfg.w, "Blend weight in [0,1]")->capture_default_str();
        t->add_flag("--override-ranges", cfg.override_ranges);
        leaves.push_back({t, "pipeline", "tune"});
    }
    {
        auto* p = app.add_subcommand("features", "Feature extraction");
        p->require_subcommand(1);
        auto* e = p->add_subcommand("edges", "Adaptive Canny edges");
        add_io(e, cfg, true);
        add_feature_opts(e, cfg);
        leaves.push_back({e, "features", "edges"});

        auto* l = p->add_subcommand("lines", "Diagonal Hough lines and roof angles");
        add_io(l, cfg, true);
        add_feature_opts(l, cfg);
        l->add_option("--rho", cfg.rho)->capture_default_str();
        l->add_option("--theta", cfg.theta, "Angle resolution in degrees")->capture_default_str();
        l->add_option("--votes", cfg.votes)->capture_default_str();
        leaves.push_back({l, "features", "lines"});

        auto* c = p->add_subcommand("circles", "Hough circles");
        add_io(c, cfg, true);
        c->add_option("--r-min", cfg.r_min)->capture_default_str();
        c->add_option("--r-max", cfg.r_max)->capture_default_str();
        c->add_option("--votes", cfg.circle_votes)->capture_default_str();
        leaves.push_back({c, "features", "circles"});

        auto* k = p->add_subcommand("corners", "Harris corners");
        add_io(k, cfg, true);
        k->add_option("--k", cfg.harris_k)->capture_default_str();
        k->add_option("--rel", cfg.harris_rel, "Threshold relative to the peak response")->capture_default_str();
        k->add_option("--median-size", cfg.harris_median)->capture_default_str();
        leaves.push_back({k, "features", "corners"});

        auto* w = p->add_subcommand("windows", "Window and door localization");
        add_io(w, cfg, true);
        add_feature_opts(w, cfg);
        w->add_option("--k", cfg.harris_k)->capture_default_str();
        w->add_option("--rel", cfg.harris_rel)->capture_default_str();
        w->add_option("--door-ratio", cfg.door_ratio)->capture_default_str();
        leaves.push_back({w, "features", "windows"});
    }
    {
        auto* p = app.add_subcommand("cue", "Cue-stick angle, alignment and isolation");
        p->require_subcommand(1);
        auto cue_opts = [&](CLI::App* s) {
            s->add_option("--canny-lo", cfg.canny_lo)->capture_default_str();
            s->add_option("--canny-hi", cfg.canny_hi)->capture_default_str();
            s->add_option("--line-votes", cfg.line_votes)->capture_default_str();
        };
        auto* a = p->add_subcommand("angle", "Estimate the cue angle");
        add_io(a, cfg, false);
        cue_opts(a);
        leaves.push_back({a, "cue", "angle"});

        auto* al = p->add_subcommand("align", "Rotate the cue to horizontal");
        add_io(al, cfg, true);
        cue_opts(al);
        leaves.push_back({al, "cue", "align"});

        auto* is = p->add_subcommand("isolate", "Remove balls and background, keep the cue strip");
        add_io(is, cfg, true);
        cue_opts(is);
        is->add_option("--r-min", cfg.r_min)->capture_default_str();
        is->add_option("--r-max", cfg.r_max)->capture_default_str();
        is->add_option("--circle-votes", cfg.circle_votes)->capture_default_str();
        is->add_option("--cloth-peak", cfg.cloth_peak)->capture_default_str();
        leaves.push_back({is, "cue", "isolate"});
    }
    {
        auto* s = app.add_subcommand("compare", "SSIM / NMI blended similarity");
        s->add_option("input", cfg.input, "First image")->required();
        s->add_option("input2", cfg.input2, "Second image")->required();
        s->add_option("--w", cfg.w, "Blend weight in [0,1]")->capture_default_str();
        s->add_option("--report", cfg.report);
        leaves.push_back({s, "compare", ""});
    }

    std::vector<const char*> args;
    for (const std::string& a : argv) args.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(args.size()), args.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        if (!config_path.empty()) {
            if (app.get_subcommands().size() > 0) {
                err << "error: --config cannot be combined with a subcommand\n\n" << app.help();
                return 1;
            }
            cfg = parse_config(config_path);
        } else {
            bool found = false;
            for (const Leaf& leaf : leaves)
                if (leaf.app->parsed()) {
                    cfg.command = leaf.command;
                    cfg.action = leaf.action;
                    found = true;
                }
            if (!found) {
                err << "error: a subcommand is required\n\n" << app.help();
                return 1;
            }
            if (!grid_path.empty()) {
                cfg.grid_file = grid_path;
                cfg.grid = load_grid(grid_path);
            }
            validate(cfg);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        return execute(cfg, out, err);
    } catch (const NoFeatureError& e) {
        err << "error: no feature found at stage '" << e.stage() << "': " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace spatialkit::cli
