#include <CLI11.hpp>
#include <json.hpp>

#include <climits>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "imgfilt/bilateral.hpp"
#include "imgfilt/linear.hpp"
#include "imgfilt/median.hpp"
#include "imgfilt/metrics.hpp"
#include "imgfilt/noise.hpp"
#include "imgfilt/pnm.hpp"
#include "imgfilt/synthetic.hpp"

using json = nlohmann::json;
using namespace imgfilt;

namespace {

// Exit codes: 0 ok, 1 usage, 2 I/O, 3 parse/validation.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

BorderPolicy parse_border(const std::string& text) {
    if (text == "replicate") return BorderPolicy::replicate();
    if (text == "mirror") return BorderPolicy::mirror();
    if (text == "crop") return BorderPolicy::crop();
    if (text.rfind("constant:", 0) == 0) {
        const std::string num = text.substr(9);
        int value = -1;
        try {
            value = std::stoi(num);
        } catch (const std::exception&) {
            throw ValidationError("border constant value '" + num + "' is not a number");
        }
        if (value < 0 || value > 255) {
            throw ValidationError("border constant value must be in [0, 255]");
        }
        return BorderPolicy::constant(static_cast<Intensity>(value));
    }
    throw ValidationError("unknown border policy '" + text +
                          "' (replicate|mirror|crop|constant:V)");
}

std::string border_name(const BorderPolicy& b) {
    switch (b.kind) {
        case BorderPolicy::Kind::Replicate: return "replicate";
        case BorderPolicy::Kind::Mirror: return "mirror";
        case BorderPolicy::Kind::Crop: return "crop";
        case BorderPolicy::Kind::Constant: return "constant:" + std::to_string(b.value);
    }
    return "?";
}

// Inputs accept real paths and baked-in synthetics ("builtin:step128").
PnmImage load_input(const std::string& path) {
    if (path.rfind("builtin:", 0) == 0) {
        const std::string name = path.substr(8);
        if (auto img = builtin_image(name)) return PnmImage(std::move(*img));
        throw ValidationError("unknown builtin image '" + name + "'");
    }
    return load_pnm(path);
}

void warn_if_large_window(int side) {
    if (side > 7) {
        std::cerr << "warning: kernel side " << side << " exceeds 7; see guidance\n";
    }
}

template <typename Fn>
PnmImage map_planes(const PnmImage& img, Fn&& fn) {
    if (const auto* gray = std::get_if<GrayImage>(&img)) return PnmImage(fn(*gray));
    const auto& rgb = std::get<RgbImage>(img);
    return PnmImage(RgbImage(fn(rgb.red()), fn(rgb.green()), fn(rgb.blue())));
}

GrayImage flags_to_image(const FlagImage& flags) {
    GrayImage out(flags.width(), flags.height(), 0);
    for (int r = 0; r < flags.height(); ++r) {
        for (int c = 0; c < flags.width(); ++c) {
            if (flags.get(r, c)) out.set(r, c, 255);
        }
    }
    return out;
}

long long elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
}

// ---------------------------------------------------------------------------
// filter
// ---------------------------------------------------------------------------

struct FilterOptions {
    std::string input;
    std::string output;
    bool ascii = false;
    int threads = 1;
    std::string border = "replicate";

    int radius = 1;           // box
    double sigma = 2.0;       // gaussian
    std::optional<int> gauss_radius;
    int w = 1;                // median / switching-median
    int t = 40;               // switching-median
    int p = 3;
    std::string flags_out;    // switching-median
    double sigma_s = 2.0;     // bilateral
    double sigma_r = 30.0;
    std::optional<int> bilateral_radius;
    std::string spatial = "gaussian";
    std::string range = "gaussian";
};

void add_io_flags(CLI::App* cmd, FilterOptions& opt, bool with_border = true) {
    cmd->add_option("input", opt.input, "input PNM (or builtin:<name>)")->required();
    cmd->add_option("output", opt.output, "output PNM path")->required();
    cmd->add_flag("--ascii", opt.ascii, "write ASCII (P2/P3) output");
    cmd->add_option("--threads", opt.threads, "worker threads (output is identical)");
    if (with_border) {
        cmd->add_option("--border", opt.border, "replicate|mirror|crop|constant:V");
    }
}

int run_filter(const std::string& algo, const FilterOptions& opt) {
    const BorderPolicy border = parse_border(opt.border);
    const Threads threads{opt.threads};
    const auto start = std::chrono::steady_clock::now();
    PnmImage out{GrayImage(1, 1)};
    std::string params;

    if (algo == "box") {
        const BoxParams p{opt.radius, border};
        warn_if_large_window(2 * p.radius + 1);
        out = map_planes(load_input(opt.input),
                         [&](const GrayImage& g) { return box_blur(g, p, threads); });
        params = "radius=" + std::to_string(p.radius) + " border=" + border_name(border);
    } else if (algo == "gaussian") {
        const GaussianParams p{opt.sigma, opt.gauss_radius, border};
        gaussian_kernel_1d(p);  // validate before touching files
        warn_if_large_window(2 * p.resolved_radius() + 1);
        out = map_planes(load_input(opt.input),
                         [&](const GrayImage& g) { return gaussian_blur(g, p, threads); });
        params = "sigma=" + format_double(p.sigma) +
                 " radius=" + std::to_string(p.resolved_radius()) +
                 " border=" + border_name(border);
    } else if (algo == "median") {
        const MedianParams p{opt.w, border};
        warn_if_large_window(2 * p.w + 1);
        out = map_planes(load_input(opt.input),
                         [&](const GrayImage& g) { return median_filter(g, p, threads); });
        params = "w=" + std::to_string(p.w) + " border=" + border_name(border);
    } else if (algo == "switching-median") {
        const SwitchingMedianParams p{opt.w, opt.t, opt.p};
        warn_if_large_window(2 * p.w + 1);
        const PnmImage in = load_input(opt.input);
        std::optional<FlagImage> merged_flags;
        out = map_planes(in, [&](const GrayImage& g) {
            SwitchingMedianResult res = switching_median(g, p, threads);
            if (!merged_flags) {
                merged_flags = res.flags;
            } else {
                for (int r = 0; r < res.flags.height(); ++r) {
                    for (int c = 0; c < res.flags.width(); ++c) {
                        if (res.flags.get(r, c)) merged_flags->set(r, c, true);
                    }
                }
            }
            return std::move(res.restored);
        });
        if (!opt.flags_out.empty()) {
            save_pnm(opt.flags_out, PnmImage(flags_to_image(*merged_flags)), opt.ascii);
        }
        params = "w=" + std::to_string(p.w) + " t=" + std::to_string(p.t) +
                 " p=" + std::to_string(p.p);
    } else if (algo == "bilateral" || algo == "surface-blur") {
        BilateralParams p;
        p.sigma_s = opt.sigma_s;
        p.sigma_r = opt.sigma_r;
        p.radius = opt.bilateral_radius;
        p.border = border;
        if (algo == "surface-blur") {
            p.spatial = SpatialKind::Box;
            p.range = RangeKind::Tent;
        } else {
            if (opt.spatial == "box") p.spatial = SpatialKind::Box;
            else if (opt.spatial != "gaussian")
                throw ValidationError("unknown spatial kind '" + opt.spatial + "'");
            if (opt.range == "tent") p.range = RangeKind::Tent;
            else if (opt.range != "gaussian")
                throw ValidationError("unknown range kind '" + opt.range + "'");
        }
        bilateral_filter(GrayImage(1, 1), p);  // validate before touching files
        warn_if_large_window(2 * p.resolved_radius() + 1);
        out = map_planes(load_input(opt.input),
                         [&](const GrayImage& g) { return bilateral_filter(g, p, threads); });
        params = "sigma-s=" + format_double(p.sigma_s) + " sigma-r=" + format_double(p.sigma_r) +
                 " radius=" + std::to_string(p.resolved_radius()) +
                 " spatial=" + (p.spatial == SpatialKind::Box ? "box" : "gaussian") +
                 " range=" + (p.range == RangeKind::Tent ? "tent" : "gaussian") +
                 " border=" + border_name(border);
    } else {
        throw ValidationError("unknown filter '" + algo + "'");
    }

    save_pnm(opt.output, out, opt.ascii);
    std::cerr << "filter=" << algo << " " << params << " ms=" << elapsed_ms(start) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// noise
// ---------------------------------------------------------------------------

struct NoiseOptions {
    std::string input;
    std::string output;
    std::string mask_out;
    bool ascii = false;
    double density = 0.1;
    double sd = 10.0;
    std::uint64_t seed = 0;
};

int run_noise_sp(const NoiseOptions& opt) {
    if (!(opt.density >= 0.0 && opt.density <= 1.0)) {
        throw ValidationError("density must be in [0, 1]");
    }
    const PnmImage in = load_input(opt.input);
    PnmImage out{GrayImage(1, 1)};
    NoiseMask mask(1, 1);
    if (const auto* gray = std::get_if<GrayImage>(&in)) {
        SaltPepperResult res = add_salt_pepper(*gray, opt.density, opt.seed);
        out = PnmImage(std::move(res.image));
        mask = std::move(res.mask);
    } else {
        RgbSaltPepperResult res = add_salt_pepper(std::get<RgbImage>(in), opt.density, opt.seed);
        out = PnmImage(std::move(res.image));
        mask = std::move(res.mask);
    }
    save_pnm(opt.output, out, opt.ascii);
    if (!opt.mask_out.empty()) {
        GrayImage mask_img(mask.width(), mask.height(), 0);
        for (int r = 0; r < mask.height(); ++r) {
            for (int c = 0; c < mask.width(); ++c) {
                if (mask.get(r, c)) mask_img.set(r, c, 255);
            }
        }
        save_pnm(opt.mask_out, PnmImage(std::move(mask_img)), opt.ascii);
    }
    return 0;
}

int run_noise_gauss(const NoiseOptions& opt) {
    if (!(opt.sd > 0.0)) throw ValidationError("sd must be positive");
    const PnmImage in = load_input(opt.input);
    PnmImage out = std::holds_alternative<GrayImage>(in)
                       ? PnmImage(add_gaussian_noise(std::get<GrayImage>(in), opt.sd, opt.seed))
                       : PnmImage(add_gaussian_noise(std::get<RgbImage>(in), opt.sd, opt.seed));
    save_pnm(opt.output, out, opt.ascii);
    return 0;
}

// ---------------------------------------------------------------------------
// metric
// ---------------------------------------------------------------------------

struct MetricOptions {
    std::string reference;
    std::string test;
    std::string flags_path;
    std::string mask_path;
};

GrayImage require_gray(const PnmImage& img, const std::string& what) {
    if (const auto* gray = std::get_if<GrayImage>(&img)) return *gray;
    throw ValidationError(what + " must be a grayscale image");
}

int run_metric(const MetricOptions& opt) {
    if (opt.flags_path.empty() != opt.mask_path.empty()) {
        throw ValidationError("--flags and --mask must be given together");
    }
    const PnmImage a = load_input(opt.reference);
    const PnmImage b = load_input(opt.test);
    MetricsReport rep;
    if (std::holds_alternative<GrayImage>(a) && std::holds_alternative<GrayImage>(b)) {
        rep = psnr(std::get<GrayImage>(a), std::get<GrayImage>(b));
    } else if (std::holds_alternative<RgbImage>(a) && std::holds_alternative<RgbImage>(b)) {
        rep = psnr(std::get<RgbImage>(a), std::get<RgbImage>(b));
    } else {
        throw ValidationError("metric inputs must both be grayscale or both color");
    }

    std::string line = format_double(rep.mse) + "," + format_double(rep.psnr_db);
    if (!opt.flags_path.empty()) {
        const GrayImage flags_img = require_gray(load_input(opt.flags_path), "--flags");
        const GrayImage mask_img = require_gray(load_input(opt.mask_path), "--mask");
        FlagImage flags(flags_img.width(), flags_img.height());
        NoiseMask mask(mask_img.width(), mask_img.height());
        for (int r = 0; r < flags_img.height(); ++r) {
            for (int c = 0; c < flags_img.width(); ++c) {
                flags.set(r, c, flags_img.at(r, c) != 0);
            }
        }
        for (int r = 0; r < mask_img.height(); ++r) {
            for (int c = 0; c < mask_img.width(); ++c) {
                mask.set(r, c, mask_img.at(r, c) != 0);
            }
        }
        const DetectionReport det = detection_confusion(flags, mask);
        line += "," + format_double(det.precision) + "," + format_double(det.recall);
    }
    std::cout << line << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchOptions {
    std::vector<double> densities;
    std::vector<std::string> algorithms;
    int reps = 1;
    std::uint64_t seed = 0;
    std::string image;
    std::string builtin = "step128";
};

struct BenchOutcome {
    GrayImage restored;
    std::optional<FlagImage> flags;
};

BenchOutcome run_preset(const std::string& algo, const GrayImage& noisy) {
    if (algo == "box") return {box_blur(noisy, BoxParams{1, BorderPolicy::replicate()}), {}};
    if (algo == "gaussian") {
        return {gaussian_blur(noisy, {2.0, std::nullopt, BorderPolicy::replicate()}), {}};
    }
    if (algo == "median") {
        return {median_filter(noisy, {1, BorderPolicy::replicate()}), {}};
    }
    if (algo == "switching-median") {
        SwitchingMedianResult res = switching_median(noisy, {1, 40, 3});
        return {std::move(res.restored), std::move(res.flags)};
    }
    if (algo == "bilateral") {
        BilateralParams p;
        p.sigma_s = 2.0;
        p.sigma_r = 30.0;
        return {bilateral_filter(noisy, p), {}};
    }
    if (algo == "surface-blur") {
        return {bilateral_filter(noisy, BilateralParams::surface_blur(2.0, 30.0)), {}};
    }
    throw ValidationError("unknown algorithm preset '" + algo + "'");
}

int run_bench(const BenchOptions& opt) {
    if (opt.densities.empty()) throw ValidationError("density list must not be empty");
    if (opt.algorithms.empty()) throw ValidationError("algorithm list must not be empty");
    if (opt.reps < 1) throw ValidationError("repetitions must be >= 1");
    for (const double d : opt.densities) {
        if (!(d >= 0.0 && d <= 1.0)) {
            throw ValidationError("density " + format_double(d) + " outside [0, 1]");
        }
    }
    for (const std::string& a : opt.algorithms) run_preset(a, GrayImage(3, 3));  // validate names

    const std::string source = opt.image.empty() ? "builtin:" + opt.builtin : opt.image;
    const GrayImage clean = require_gray(load_input(source), "bench image");

    std::cout << "algorithm,density,rep,seed,mse,psnr_db,precision,recall,ms\n";
    for (const double density : opt.densities) {
        for (const std::string& algo : opt.algorithms) {
            for (int rep = 0; rep < opt.reps; ++rep) {
                const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(rep);
                const SaltPepperResult noisy = add_salt_pepper(clean, density, seed);
                const auto start = std::chrono::steady_clock::now();
                const BenchOutcome outcome = run_preset(algo, noisy.image);
                const long long ms = elapsed_ms(start);
                const MetricsReport rep_metrics = psnr(outcome.restored, clean);
                std::string precision;
                std::string recall;
                if (outcome.flags) {
                    const DetectionReport det = detection_confusion(*outcome.flags, noisy.mask);
                    precision = format_double(det.precision);
                    recall = format_double(det.recall);
                }
                std::cout << algo << "," << format_double(density) << "," << rep << "," << seed
                          << "," << format_double(rep_metrics.mse) << ","
                          << format_double(rep_metrics.psnr_db) << "," << precision << ","
                          << recall << "," << ms << "\n";
            }
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// pipeline
// ---------------------------------------------------------------------------

struct Stage {
    std::string op;
    std::function<PnmImage(const PnmImage&)> apply;
};

void reject_unknown_keys(const json& params, std::initializer_list<const char*> known,
                         int stage_index) {
    for (const auto& [key, value] : params.items()) {
        bool ok = false;
        for (const char* k : known) {
            if (key == k) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw ValidationError("stage " + std::to_string(stage_index) + ": unknown key '" +
                                  key + "'");
        }
    }
}

double number_or(const json& params, const char* key, double fallback, int stage_index) {
    if (!params.contains(key)) return fallback;
    if (!params[key].is_number()) {
        throw ValidationError("stage " + std::to_string(stage_index) + ": key '" + key +
                              "' must be a number");
    }
    return params[key].get<double>();
}

int int_or(const json& params, const char* key, int fallback, int stage_index) {
    if (!params.contains(key)) return fallback;
    if (!params[key].is_number_integer()) {
        throw ValidationError("stage " + std::to_string(stage_index) + ": key '" + key +
                              "' must be an integer");
    }
    return params[key].get<int>();
}

std::string string_or(const json& params, const char* key, const std::string& fallback,
                      int stage_index) {
    if (!params.contains(key)) return fallback;
    if (!params[key].is_string()) {
        throw ValidationError("stage " + std::to_string(stage_index) + ": key '" + key +
                              "' must be a string");
    }
    return params[key].get<std::string>();
}

std::uint64_t seed_or(const json& params, std::uint64_t fallback, int stage_index) {
    if (!params.contains("seed")) return fallback;
    if (!params["seed"].is_number_integer()) {
        throw ValidationError("stage " + std::to_string(stage_index) +
                              ": key 'seed' must be an integer");
    }
    return params["seed"].get<std::uint64_t>();
}

Stage build_stage(const json& stage_json, int index, std::uint64_t default_seed) {
    if (!stage_json.is_object() || !stage_json.contains("op") || !stage_json["op"].is_string()) {
        throw ValidationError("stage " + std::to_string(index) + ": missing string key 'op'");
    }
    const std::string op = stage_json["op"].get<std::string>();
    const json params = stage_json.value("params", json::object());
    if (!params.is_object()) {
        throw ValidationError("stage " + std::to_string(index) + ": 'params' must be an object");
    }

    auto wrap_validation = [index](const std::exception& e) {
        return ValidationError("stage " + std::to_string(index) + ": " + e.what());
    };

    try {
        if (op == "box") {
            reject_unknown_keys(params, {"radius", "border"}, index);
            const BoxParams p{int_or(params, "radius", 1, index),
                              parse_border(string_or(params, "border", "replicate", index))};
            box_blur(GrayImage(2 * p.radius + 1, 2 * p.radius + 1), p);  // validate now
            return {op, [p](const PnmImage& img) {
                        return map_planes(img, [&](const GrayImage& g) { return box_blur(g, p); });
                    }};
        }
        if (op == "gaussian") {
            reject_unknown_keys(params, {"sigma", "radius", "border"}, index);
            GaussianParams p{number_or(params, "sigma", 2.0, index), std::nullopt,
                             parse_border(string_or(params, "border", "replicate", index))};
            if (params.contains("radius")) p.radius = int_or(params, "radius", 1, index);
            gaussian_kernel_1d(p);
            return {op, [p](const PnmImage& img) {
                        return map_planes(img,
                                          [&](const GrayImage& g) { return gaussian_blur(g, p); });
                    }};
        }
        if (op == "median") {
            reject_unknown_keys(params, {"w", "border"}, index);
            const MedianParams p{int_or(params, "w", 1, index),
                                 parse_border(string_or(params, "border", "replicate", index))};
            median_filter(GrayImage(1, 1), p);
            return {op, [p](const PnmImage& img) {
                        return map_planes(img,
                                          [&](const GrayImage& g) { return median_filter(g, p); });
                    }};
        }
        if (op == "switching-median") {
            reject_unknown_keys(params, {"w", "t", "p"}, index);
            const SwitchingMedianParams p{int_or(params, "w", 1, index),
                                          int_or(params, "t", 40, index),
                                          int_or(params, "p", 3, index)};
            switching_median(GrayImage(1, 1), p);
            return {op, [p](const PnmImage& img) {
                        return map_planes(img, [&](const GrayImage& g) {
                            return switching_median(g, p).restored;
                        });
                    }};
        }
        if (op == "bilateral" || op == "surface-blur") {
            reject_unknown_keys(params,
                                {"sigma-s", "sigma-r", "radius", "spatial", "range", "border"},
                                index);
            BilateralParams p;
            p.sigma_s = number_or(params, "sigma-s", 2.0, index);
            p.sigma_r = number_or(params, "sigma-r", 30.0, index);
            if (params.contains("radius")) p.radius = int_or(params, "radius", 1, index);
            p.border = parse_border(string_or(params, "border", "replicate", index));
            if (op == "surface-blur") {
                p.spatial = SpatialKind::Box;
                p.range = RangeKind::Tent;
            } else {
                const std::string spatial = string_or(params, "spatial", "gaussian", index);
                const std::string range = string_or(params, "range", "gaussian", index);
                if (spatial == "box") p.spatial = SpatialKind::Box;
                else if (spatial != "gaussian")
                    throw ValidationError("unknown spatial kind '" + spatial + "'");
                if (range == "tent") p.range = RangeKind::Tent;
                else if (range != "gaussian")
                    throw ValidationError("unknown range kind '" + range + "'");
            }
            bilateral_filter(GrayImage(1, 1), p);
            return {op, [p](const PnmImage& img) {
                        return map_planes(
                            img, [&](const GrayImage& g) { return bilateral_filter(g, p); });
                    }};
        }
        if (op == "salt-pepper") {
            reject_unknown_keys(params, {"density", "seed"}, index);
            const double density = number_or(params, "density", 0.1, index);
            if (!(density >= 0.0 && density <= 1.0)) {
                throw ValidationError("density must be in [0, 1]");
            }
            const std::uint64_t seed = seed_or(params, default_seed, index);
            return {op, [density, seed](const PnmImage& img) {
                        if (const auto* gray = std::get_if<GrayImage>(&img)) {
                            return PnmImage(add_salt_pepper(*gray, density, seed).image);
                        }
                        return PnmImage(
                            add_salt_pepper(std::get<RgbImage>(img), density, seed).image);
                    }};
        }
        if (op == "gaussian-noise") {
            reject_unknown_keys(params, {"sd", "seed"}, index);
            const double sd = number_or(params, "sd", 10.0, index);
            if (!(sd > 0.0)) throw ValidationError("sd must be positive");
            const std::uint64_t seed = seed_or(params, default_seed, index);
            return {op, [sd, seed](const PnmImage& img) {
                        if (const auto* gray = std::get_if<GrayImage>(&img)) {
                            return PnmImage(add_gaussian_noise(*gray, sd, seed));
                        }
                        return PnmImage(add_gaussian_noise(std::get<RgbImage>(img), sd, seed));
                    }};
        }
    } catch (const ValidationError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw wrap_validation(e);
    }
    throw ValidationError("stage " + std::to_string(index) + ": unknown op '" + op + "'");
}

int run_pipeline(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) throw IoError("cannot open '" + config_path + "' for reading");
    json config;
    try {
        config = json::parse(in, nullptr, /*allow_exceptions=*/true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!config.is_object()) throw ValidationError("config root must be an object");
    for (const char* key : {"input", "output"}) {
        if (!config.contains(key) || !config[key].is_string()) {
            throw ValidationError(std::string("config needs string key '") + key + "'");
        }
    }
    std::uint64_t seed = 0;
    if (config.contains("seed")) {
        if (!config["seed"].is_number_integer()) {
            throw ValidationError("config key 'seed' must be an integer");
        }
        seed = config["seed"].get<std::uint64_t>();
    }
    const bool ascii = config.value("ascii", false);
    const json stages_json = config.value("stages", json::array());
    if (!stages_json.is_array()) throw ValidationError("config key 'stages' must be an array");

    // Fail fast: every stage validates before the input is even opened.
    std::vector<Stage> stages;
    for (std::size_t i = 0; i < stages_json.size(); ++i) {
        stages.push_back(build_stage(stages_json[i], static_cast<int>(i), seed));
    }

    PnmImage image = load_input(config["input"].get<std::string>());
    for (const Stage& stage : stages) image = stage.apply(image);
    save_pnm(config["output"].get<std::string>(), image, ascii);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic image filtering, noise injection and benchmarking"};
    app.require_subcommand(1);

    FilterOptions filter_opt;
    CLI::App* filter = app.add_subcommand("filter", "apply one filter to a PNM image");
    filter->require_subcommand(1);
    std::string filter_algo;

    CLI::App* f_box = filter->add_subcommand("box", "uniform window mean");
    f_box->add_option("--radius", filter_opt.radius, "window radius (side 2r+1)");
    CLI::App* f_gauss = filter->add_subcommand("gaussian", "separable gaussian smoothing");
    f_gauss->add_option("--sigma", filter_opt.sigma, "standard deviation in pixels");
    int gauss_radius_flag = INT_MIN;
    f_gauss->add_option("--radius", gauss_radius_flag, "kernel radius (default: ceil(3 sigma))");
    CLI::App* f_median = filter->add_subcommand("median", "window median");
    f_median->add_option("--w", filter_opt.w, "half window (side 2w+1)");
    CLI::App* f_switch =
        filter->add_subcommand("switching-median", "iterative impulse detection and repair");
    f_switch->add_option("--w", filter_opt.w, "half window (side 2w+1)");
    f_switch->add_option("--t", filter_opt.t, "detection threshold");
    f_switch->add_option("--p", filter_opt.p, "iterations");
    f_switch->add_option("--flags-out", filter_opt.flags_out, "write detected flags as 0/255 PGM");
    CLI::App* f_bilateral = filter->add_subcommand("bilateral", "edge-preserving weighted mean");
    int bilateral_radius_flag = INT_MIN;
    f_bilateral->add_option("--sigma-s", filter_opt.sigma_s, "spatial scale, pixels");
    f_bilateral->add_option("--sigma-r", filter_opt.sigma_r, "range scale, intensity");
    f_bilateral->add_option("--radius", bilateral_radius_flag,
                            "window radius (default: ceil(3 sigma-s))");
    f_bilateral->add_option("--spatial", filter_opt.spatial, "gaussian|box");
    f_bilateral->add_option("--range", filter_opt.range, "gaussian|tent");
    CLI::App* f_surface =
        filter->add_subcommand("surface-blur", "bilateral with box spatial and tent range");
    f_surface->add_option("--sigma-s", filter_opt.sigma_s, "spatial scale, pixels");
    f_surface->add_option("--sigma-r", filter_opt.sigma_r, "range scale, intensity");
    f_surface->add_option("--radius", bilateral_radius_flag,
                          "window radius (default: ceil(3 sigma-s))");
    for (CLI::App* cmd : {f_box, f_gauss, f_median, f_bilateral, f_surface}) {
        add_io_flags(cmd, filter_opt);
    }
    add_io_flags(f_switch, filter_opt, /*with_border=*/false);  // detection pass pins Replicate

    NoiseOptions noise_opt;
    CLI::App* noise = app.add_subcommand("noise", "inject seeded noise");
    noise->require_subcommand(1);
    CLI::App* n_sp = noise->add_subcommand("sp", "salt-and-pepper impulses");
    n_sp->add_option("--density", noise_opt.density, "fraction of pixels corrupted")->required();
    n_sp->add_option("--seed", noise_opt.seed, "random seed");
    n_sp->add_option("--mask-out", noise_opt.mask_out, "write ground-truth mask as 0/255 PGM");
    CLI::App* n_gauss = noise->add_subcommand("gauss", "additive gaussian noise");
    n_gauss->add_option("--sd", noise_opt.sd, "noise standard deviation")->required();
    n_gauss->add_option("--seed", noise_opt.seed, "random seed");
    for (CLI::App* cmd : {n_sp, n_gauss}) {
        cmd->add_option("input", noise_opt.input, "input PNM (or builtin:<name>)")->required();
        cmd->add_option("output", noise_opt.output, "output PNM path")->required();
        cmd->add_flag("--ascii", noise_opt.ascii, "write ASCII output");
    }

    MetricOptions metric_opt;
    CLI::App* metric = app.add_subcommand("metric", "print mse,psnr_db[,precision,recall] CSV");
    metric->add_option("reference", metric_opt.reference, "reference image")->required();
    metric->add_option("test", metric_opt.test, "image under test")->required();
    metric->add_option("--flags", metric_opt.flags_path, "detector flag image (0/255 PGM)");
    metric->add_option("--mask", metric_opt.mask_path, "ground-truth mask (0/255 PGM)");

    BenchOptions bench_opt;
    CLI::App* bench = app.add_subcommand("bench", "noise sweep benchmark, CSV on stdout");
    bench->add_option("--densities", bench_opt.densities, "impulse densities")
        ->delimiter(',')
        ->required();
    bench->add_option("--algorithms", bench_opt.algorithms,
                      "presets: box,gaussian,median,switching-median,bilateral,surface-blur")
        ->delimiter(',')
        ->required();
    bench->add_option("--reps", bench_opt.reps, "repetitions per cell");
    bench->add_option("--seed", bench_opt.seed, "base seed; rep i uses seed+i");
    bench->add_option("--image", bench_opt.image, "reference PGM path");
    bench->add_option("--builtin", bench_opt.builtin, "builtin synthetic (default step128)");

    std::string pipeline_config;
    CLI::App* pipeline = app.add_subcommand("pipeline", "run a JSON stage pipeline");
    pipeline->add_option("config", pipeline_config, "pipeline config JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: usage: " << e.what() << "\n";
        return 1;
    }

    try {
        if (filter->parsed()) {
            for (const auto& [cmd, name] :
                 {std::pair{f_box, "box"}, {f_gauss, "gaussian"}, {f_median, "median"},
                  {f_switch, "switching-median"}, {f_bilateral, "bilateral"},
                  {f_surface, "surface-blur"}}) {
                if (cmd->parsed()) filter_algo = name;
            }
            if (gauss_radius_flag != INT_MIN) filter_opt.gauss_radius = gauss_radius_flag;
            if (bilateral_radius_flag != INT_MIN) filter_opt.bilateral_radius = bilateral_radius_flag;
            return run_filter(filter_algo, filter_opt);
        }
        if (noise->parsed()) {
            if (n_sp->parsed()) return run_noise_sp(noise_opt);
            return run_noise_gauss(noise_opt);
        }
        if (metric->parsed()) return run_metric(metric_opt);
        if (bench->parsed()) return run_bench(bench_opt);
        if (pipeline->parsed()) return run_pipeline(pipeline_config);
    } catch (const IoError& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return 2;
    } catch (const PnmError& e) {
        std::cerr << "error: validation: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: validation: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: validation: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
