// Batch front end: dehazing, dataset evaluation with CSV output, and
// synthetic haze generation via the forward model.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pfdcp/dcp.hpp"
#include "pfdcp/image_io.hpp"
#include "pfdcp/metrics.hpp"
#include "pfdcp/pyramid.hpp"
#include "pfdcp/synth.hpp"

namespace fs = std::filesystem;
using namespace pfdcp;

namespace {

bool is_image_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

std::vector<fs::path> list_images(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && is_image_file(e.path()))
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    return files;
}

std::string format_metric(double v) {
    if (std::isinf(v)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

struct CliOptions {
    std::string method = "pfdcp";
    std::string profile = "indoor";
    DehazeParams params;
    bool weights_given = false;
    bool dump_intermediates = false;
    int threads = 1;
    std::string config_path;
};

void add_common_options(CLI::App* cmd, CliOptions& opt,
                        std::map<std::string, CLI::Option*>& flags) {
    flags["method"] = cmd->add_option("--method", opt.method, "dcp or pfdcp")
                          ->check(CLI::IsMember({"dcp", "pfdcp"}));
    flags["profile"] =
        cmd->add_option("--profile", opt.profile, "indoor, outdoor or custom")
            ->check(CLI::IsMember({"indoor", "outdoor", "custom"}));
    flags["patch"] = cmd->add_option("--patch", opt.params.patch, "dark-channel patch size (odd)");
    flags["omega"] = cmd->add_option("--omega", opt.params.omega, "haze retention factor");
    flags["t0"] = cmd->add_option("--t0", opt.params.t0, "transmission lower bound");
    flags["top_fraction"] = cmd->add_option("--top-fraction", opt.params.top_fraction,
                                            "airlight candidate fraction");
    flags["gf_radius"] = cmd->add_option("--gf-radius", opt.params.gf_radius,
                                         "guided filter radius");
    flags["gf_eps"] = cmd->add_option("--gf-eps", opt.params.gf_eps,
                                      "guided filter regularizer");
    flags["weights"] =
        cmd->add_option_function<std::string>(
               "--weights",
               [&opt](const std::string& s) {
                   const auto colon = s.find(':');
                   if (colon == std::string::npos)
                       throw CLI::ValidationError("--weights", "expected WLOW:WHIGH");
                   opt.params.fusion_low_weight = std::stod(s.substr(0, colon));
                   opt.params.fusion_high_weight = std::stod(s.substr(colon + 1));
                   opt.weights_given = true;
               },
               "fusion weights WLOW:WHIGH (coarse:fine)");
    flags["threads"] = cmd->add_option("--threads", opt.threads, "worker thread count")
                           ->check(CLI::PositiveNumber);
    cmd->add_option("--config", opt.config_path,
                    "key=value config file (defaults < config < flags)");
}

// Applies config-file values for every key whose flag was not passed.
void apply_config(const CliOptions& opt, DehazeParams& p, bool weights_given,
                  const std::map<std::string, CLI::Option*>& flags) {
    if (opt.config_path.empty()) return;
    std::ifstream in(opt.config_path);
    if (!in) throw std::runtime_error("cannot read config file: " + opt.config_path);

    auto flag_given = [&flags](const std::string& name) {
        auto it = flags.find(name);
        return it != flags.end() && it->second->count() > 0;
    };

    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("malformed config line: " + line);
        const std::string key = line.substr(0, eq);
        const std::string val = line.substr(eq + 1);
        if (key == "patch" && !flag_given("patch")) p.patch = std::stoi(val);
        else if (key == "top_fraction" && !flag_given("top_fraction")) p.top_fraction = std::stod(val);
        else if (key == "omega" && !flag_given("omega")) p.omega = std::stod(val);
        else if (key == "t0" && !flag_given("t0")) p.t0 = std::stod(val);
        else if (key == "fusion_low_weight" && !weights_given) p.fusion_low_weight = std::stod(val);
        else if (key == "fusion_high_weight" && !weights_given) p.fusion_high_weight = std::stod(val);
        else if (key == "gf_radius" && !flag_given("gf_radius")) p.gf_radius = std::stoi(val);
        else if (key == "gf_eps" && !flag_given("gf_eps")) p.gf_eps = std::stod(val);
        else if (key == "patch" || key == "top_fraction" || key == "omega" ||
                 key == "t0" || key == "fusion_low_weight" ||
                 key == "fusion_high_weight" || key == "gf_radius" || key == "gf_eps") {
            // flag wins, config value ignored
        } else {
            throw std::runtime_error("unknown config key: " + key);
        }
    }
}

// Profile fixes the fusion weights unless they were set explicitly.
void resolve_profile(CliOptions& opt) {
    if (opt.profile == "indoor" && !opt.weights_given) {
        opt.params.fusion_low_weight = 4.0;
        opt.params.fusion_high_weight = 1.0;
    } else if (opt.profile == "outdoor" && !opt.weights_given) {
        opt.params.fusion_low_weight = 80.0;
        opt.params.fusion_high_weight = 1.0;
    } else if (opt.profile == "custom" && !opt.weights_given) {
        throw std::runtime_error("profile custom requires --weights");
    }
}

DehazeResult run_pipeline(const RgbImage& img, const CliOptions& opt,
                          PyramidTrace* trace, std::string& warning) {
    if (opt.method == "dcp")
        return dehaze_dcp(img, opt.params);
    if (std::min(img.width, img.height) < opt.params.patch) {
        warning = "image smaller than patch, falling back to classic DCP";
        return dehaze_dcp(img, opt.params);
    }
    return dehaze_pfdcp(img, opt.params, trace);
}

// Runs fn(i) for i in [0, n) over a pool of `threads` workers.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int count = std::min<std::size_t>(threads, n);
    for (int t = 0; t < count; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) fn(i);
        });
    for (auto& th : pool) th.join();
}

std::mutex io_mutex;

int cmd_dehaze(const CliOptions& opt, const std::string& input,
               const std::string& output) {
    std::vector<fs::path> files;
    if (fs::is_directory(input)) {
        files = list_images(input);
    } else if (fs::exists(input)) {
        files.push_back(input);
    } else {
        std::cerr << "input not found: " << input << "\n";
        return 1;
    }
    if (files.empty()) {
        std::cerr << "no images under " << input << "\n";
        return 1;
    }
    fs::create_directories(output);

    std::atomic<int> failures{0};
    parallel_for(files.size(), opt.threads, [&](std::size_t i) {
        const fs::path& file = files[i];
        const std::string stem = file.stem().string();
        try {
            const RgbImage img = load_image(file.string());
            const auto start = std::chrono::steady_clock::now();
            PyramidTrace trace;
            std::string warning;
            const bool want_trace =
                opt.dump_intermediates && opt.method == "pfdcp";
            const DehazeResult res =
                run_pipeline(img, opt, want_trace ? &trace : nullptr, warning);
            const double ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();

            const fs::path out = fs::path(output) / (stem + ".png");
            save_image(res.image, out.string());
            if (opt.dump_intermediates) {
                save_image(res.transmission,
                           (fs::path(output) / (stem + "_t_final.png")).string());
                save_image(dark_channel(img, opt.params.patch),
                           (fs::path(output) / (stem + "_dark.png")).string());
                if (want_trace && !trace.level_maps.empty()) {
                    for (std::size_t k = 0; k < trace.level_maps.size(); ++k)
                        save_image(trace.level_maps[k],
                                   (fs::path(output) /
                                    (stem + "_t_level" + std::to_string(k) + ".png"))
                                       .string());
                    save_image(trace.fused,
                               (fs::path(output) / (stem + "_t_fused.png")).string());
                }
            }
            std::lock_guard<std::mutex> lock(io_mutex);
            if (!warning.empty())
                std::cerr << stem << ": " << warning << "\n";
            std::printf("%s: %.1f ms\n", stem.c_str(), ms);
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(io_mutex);
            std::cerr << stem << ": " << e.what() << "\n";
            ++failures;
        }
    });
    return failures > 0 ? 1 : 0;
}

// GT stem is the hazy stem truncated at the first underscore (RESIDE
// convention); falls back to an exact stem match.
std::optional<fs::path> resolve_gt(const fs::path& hazy, const fs::path& gt_dir) {
    const std::string stem = hazy.stem().string();
    const std::string truncated = stem.substr(0, stem.find('_'));
    for (const std::string& candidate : {truncated, stem})
        for (const char* ext : {".png", ".jpg", ".jpeg", ".PNG", ".JPG", ".JPEG"}) {
            const fs::path p = gt_dir / (candidate + ext);
            if (fs::exists(p)) return p;
        }
    return std::nullopt;
}

int cmd_eval(const CliOptions& opt, const std::string& hazy_dir,
             const std::string& gt_dir, const std::string& csv_path) {
    const std::vector<fs::path> hazy_files = list_images(hazy_dir);
    std::vector<std::pair<fs::path, fs::path>> pairs;
    for (const fs::path& hazy : hazy_files) {
        if (auto gt = resolve_gt(hazy, gt_dir)) {
            pairs.emplace_back(hazy, *gt);
        } else {
            std::cerr << "skipped (no ground truth): " << hazy.filename().string() << "\n";
        }
    }
    if (pairs.empty()) {
        std::cerr << "no hazy/ground-truth pairs resolved\n";
        return 1;
    }

    std::vector<EvalRecord> records(pairs.size());
    std::atomic<int> failures{0};
    parallel_for(pairs.size(), opt.threads, [&](std::size_t i) {
        const auto& [hazy_path, gt_path] = pairs[i];
        try {
            const RgbImage hazy = load_image(hazy_path.string());
            const RgbImage gt = load_image(gt_path.string());
            const auto start = std::chrono::steady_clock::now();
            std::string warning;
            const DehazeResult res = run_pipeline(hazy, opt, nullptr, warning);
            const double ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
            records[i] = {hazy_path.stem().string(), psnr(res.image, gt),
                          ssim(res.image, gt), ms};
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(io_mutex);
            std::cerr << hazy_path.filename().string() << ": " << e.what() << "\n";
            records[i] = {hazy_path.stem().string(),
                          std::numeric_limits<double>::quiet_NaN(),
                          std::numeric_limits<double>::quiet_NaN(), 0.0};
            ++failures;
        }
    });

    std::ofstream csv(csv_path);
    if (!csv) {
        std::cerr << "cannot write CSV: " << csv_path << "\n";
        return 1;
    }
    csv << "image_id,psnr,ssim,wall_ms\n";
    double psnr_sum = 0.0, ssim_sum = 0.0, ms_sum = 0.0;
    std::size_t ok = 0;
    for (const EvalRecord& r : records) {
        if (std::isnan(r.psnr)) continue;
        csv << r.image_id << ',' << format_metric(r.psnr) << ','
            << format_metric(r.ssim) << ',' << format_metric(r.wall_ms) << "\n";
        psnr_sum += r.psnr;
        ssim_sum += r.ssim;
        ms_sum += r.wall_ms;
        ++ok;
    }
    if (ok == 0) {
        std::cerr << "no image evaluated successfully\n";
        return 1;
    }
    const double mean_psnr = psnr_sum / ok;
    const double mean_ssim = ssim_sum / ok;
    csv << "MEAN," << format_metric(mean_psnr) << ',' << format_metric(mean_ssim)
        << ',' << format_metric(ms_sum / ok) << "\n";
    std::printf("%zu images  mean PSNR %s  mean SSIM %s\n", ok,
                format_metric(mean_psnr).c_str(), format_metric(mean_ssim).c_str());
    return failures > 0 ? 1 : 0;
}

// Bilinearly interpolated low-frequency random field in [lo, hi].
TransmissionMap smooth_random_map(int w, int h, double lo, double hi,
                                  std::mt19937& rng) {
    constexpr int kGrid = 4;
    std::uniform_real_distribution<double> dist(lo, hi);
    double grid[kGrid][kGrid];
    for (auto& row : grid)
        for (double& v : row) v = dist(rng);

    TransmissionMap out(w, h);
    for (int y = 0; y < h; ++y) {
        const double gy = (h == 1) ? 0.0 : double(y) / (h - 1) * (kGrid - 1);
        const int y0 = std::min(kGrid - 2, static_cast<int>(gy));
        const double fy = gy - y0;
        for (int x = 0; x < w; ++x) {
            const double gx = (w == 1) ? 0.0 : double(x) / (w - 1) * (kGrid - 1);
            const int x0 = std::min(kGrid - 2, static_cast<int>(gx));
            const double fx = gx - x0;
            out.at(y, x) = (1 - fy) * ((1 - fx) * grid[y0][x0] + fx * grid[y0][x0 + 1]) +
                           fy * ((1 - fx) * grid[y0 + 1][x0] + fx * grid[y0 + 1][x0 + 1]);
        }
    }
    return out;
}

int cmd_synth(const std::string& clear_dir, const std::string& out_dir,
              unsigned seed, std::optional<double> t_const,
              std::optional<std::string> atmosphere_arg, bool smooth_t) {
    const std::vector<fs::path> files = list_images(clear_dir);
    if (files.empty()) {
        std::cerr << "no images under " << clear_dir << "\n";
        return 1;
    }
    fs::create_directories(out_dir);

    std::optional<Atmosphere> fixed_a;
    if (atmosphere_arg) {
        Atmosphere a;
        if (std::sscanf(atmosphere_arg->c_str(), "%lf,%lf,%lf", &a.r, &a.g, &a.b) != 3) {
            std::cerr << "--a expects r,g,b\n";
            return 1;
        }
        fixed_a = a;
    }

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> a_dist(0.7, 1.0);
    std::uniform_real_distribution<double> t_dist(0.3, 0.9);

    int failures = 0;
    for (const fs::path& file : files) {
        const std::string stem = file.stem().string();
        try {
            const RgbImage clear = load_image(file.string());
            SynthSpec spec;
            spec.atmosphere = fixed_a ? *fixed_a
                                      : Atmosphere{a_dist(rng), a_dist(rng), a_dist(rng)};
            std::ofstream meta(fs::path(out_dir) / (stem + ".meta"));
            meta << "a_r=" << spec.atmosphere.r << "\n"
                 << "a_g=" << spec.atmosphere.g << "\n"
                 << "a_b=" << spec.atmosphere.b << "\n";
            if (smooth_t) {
                spec.t_map = smooth_random_map(clear.width, clear.height, 0.3, 0.95, rng);
                // t maps live in a subdirectory so they are not picked up as
                // inputs by later dehaze/eval runs over the output directory
                fs::create_directories(fs::path(out_dir) / "t");
                const fs::path t_path = fs::path(out_dir) / "t" / (stem + "_t.png");
                save_image(*spec.t_map, t_path.string());
                meta << "t_map=" << t_path.string() << "\n";
            } else {
                spec.t_const = t_const ? *t_const : t_dist(rng);
                meta << "t_const=" << spec.t_const << "\n";
            }
            save_image(synthesize_haze(clear, spec),
                       (fs::path(out_dir) / (stem + ".png")).string());
        } catch (const std::exception& e) {
            std::cerr << stem << ": " << e.what() << "\n";
            ++failures;
        }
    }
    return failures > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pyramid-fusion dark channel prior dehazing toolkit"};
    app.require_subcommand(1);

    CliOptions opt;
    std::map<std::string, CLI::Option*> dehaze_flags, eval_flags;

    std::string input, output;
    CLI::App* dehaze = app.add_subcommand("dehaze", "dehaze an image or directory");
    dehaze->add_option("input", input, "image file or directory")->required();
    dehaze->add_option("-o,--output", output, "output directory")->required();
    add_common_options(dehaze, opt, dehaze_flags);
    dehaze->add_flag("--dump-intermediates", opt.dump_intermediates,
                     "also write dark channel and transmission maps");

    std::string hazy_dir, gt_dir, csv_path = "eval.csv";
    CLI::App* eval = app.add_subcommand("eval", "evaluate PSNR/SSIM over a paired dataset");
    eval->add_option("--hazy", hazy_dir, "hazy image directory")->required();
    eval->add_option("--gt", gt_dir, "ground-truth directory")->required();
    eval->add_option("--csv", csv_path, "per-image CSV output path");
    add_common_options(eval, opt, eval_flags);

    std::string clear_dir, synth_out;
    unsigned seed = 0;
    std::optional<double> t_const;
    std::optional<std::string> atmosphere_arg;
    bool smooth_t = false;
    CLI::App* synth = app.add_subcommand("synth", "generate synthetic hazy images");
    synth->add_option("--clear", clear_dir, "clear (ground-truth) image directory")->required();
    synth->add_option("-o,--output", synth_out, "output directory")->required();
    synth->add_option("--seed", seed, "RNG seed");
    synth->add_option("--t", t_const, "constant transmission for every image");
    synth->add_option("--a", atmosphere_arg, "fixed atmosphere r,g,b");
    synth->add_flag("--t-smooth", smooth_t, "use a smooth random transmission map");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dehaze->parsed() || eval->parsed()) {
            const auto& flags = dehaze->parsed() ? dehaze_flags : eval_flags;
            apply_config(opt, opt.params, opt.weights_given, flags);
            resolve_profile(opt);
            opt.params.validate();
        }
        if (dehaze->parsed()) return cmd_dehaze(opt, input, output);
        if (eval->parsed()) return cmd_eval(opt, hazy_dir, gt_dir, csv_path);
        if (synth->parsed())
            return cmd_synth(clear_dir, synth_out, seed, t_const, atmosphere_arg, smooth_t);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
