// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include "commands.hpp"
#include "gradsharp/bench_config.hpp"
#include "gradsharp/error.hpp"
#include "gradsharp/gradient.hpp"
#include "gradsharp/io.hpp"
#include "gradsharp/metric.hpp"
#include "gradsharp/preprocess.hpp"
#include "gradsharp/stats.hpp"
#include "gradsharp/synth.hpp"
#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

using namespace gradsharp;
namespace ref = gradsharp::reference;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double max_abs_diff(std::span<const double> a, const std::vector<double>& b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

// 1 -------------------------------------------------------------------------

Outcome oracle_equivalence()
{
    const auto t0 = Clock::now();
    const MetricConfig cfg;
    double worst = 0.0;
    bool masks_equal = true;
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const GrayImage img = testing::random_image(32, 32, 0x5eed0000 + seed);
        const ref::Raster raster = testing::to_raster(img);

        const GrayImage filtered = filter_anomalous_pixels(img, {cfg.pixel_dif_threshold});
        const ref::Raster rfiltered = ref::anomaly_filter(raster, cfg.pixel_dif_threshold);
        worst = std::max(worst, max_abs_diff(filtered.samples(), rfiltered.v));

        // Later stages run on the reference's own intermediates so each stage is checked in isolation.
        const GrayImage rf_img(32, 32, rfiltered.v, 16);
        const BinaryMask lh = low_high_mask(rf_img, cfg.low_threshold, cfg.high_threshold);
        const ref::Bits rlh = ref::low_high(rfiltered, cfg.low_threshold, cfg.high_threshold);
        masks_equal &= lh == BinaryMask(32, 32, rlh.v);

        const ref::Bits rsupport = ref::sobel_support(rlh, cfg.sobel_size);
        ref::Selection rsel[2];
        std::vector<SelectedGradients> sel;
        for (int a = 0; a < 2; ++a) {
            const Axis axis = a == 0 ? Axis::X : Axis::Y;
            const bool x = axis == Axis::X;
            const GradientField g = sobel_gradient(rf_img, lh, cfg.sobel_size, axis);
            const ref::Raster rg = ref::sobel(rfiltered, rlh, cfg.sobel_size, x);
            worst = std::max(worst, max_abs_diff(g.values(), rg.v));
            masks_equal &= g.support() == BinaryMask(32, 32, rsupport.v);

            sel.push_back(percentile_mask(g, cfg.percentile_low, cfg.percentile_high));
            rsel[a] = ref::select(rg, rsupport, cfg.percentile_low, cfg.percentile_high);
            masks_equal &= sel[a].mask == BinaryMask(32, 32, rsel[a].mask.v);

            const GrayImage blurred = gaussian_blur_1d(rf_img, cfg.gauss_size, cfg.gauss_sigma, axis);
            const ref::Raster rblurred = ref::blur_1d(rfiltered, cfg.gauss_size, cfg.gauss_sigma, x);
            worst = std::max(worst, max_abs_diff(blurred.samples(), rblurred.v));

            const GradientField gb = sobel_gradient(blurred, lh, cfg.sobel_size, axis);
            const ref::Raster rgb = ref::sobel(rblurred, rlh, cfg.sobel_size, x);
            worst = std::max(worst, max_abs_diff(gb.values(), rgb.v));

            if (sel[a].entries.size() != rsel[a].indices.size()) {
                masks_equal = false;
                continue;
            }
            const DecaySet d = decay_rates(sel[a], gb);
            const std::vector<double> rd = ref::decays(rsel[a], rgb);
            worst = std::max(worst, max_abs_diff(d.decays, rd));
            worst = std::max(worst, std::abs(sharpness_score(d) - ref::score(rd)));
        }

        const auto [r_x, r_y] = representativeness(rf_img, lh, sel[0], sel[1], cfg);
        const int rep = cfg.rep_kernel_size();
        const double rr_x = ref::mean_abs_at(
            ref::sobel(ref::blur_1d(rfiltered, rep, cfg.rep_sigma, true), rlh, cfg.sobel_size, true), rsel[0]);
        const double rr_y = ref::mean_abs_at(
            ref::sobel(ref::blur_1d(rfiltered, rep, cfg.rep_sigma, false), rlh, cfg.sobel_size, false), rsel[1]);
        worst = std::max({worst, std::abs(r_x - rr_x), std::abs(r_y - rr_y)});
    }
    const double elapsed = seconds_since(t0);
    return {worst <= 1e-9 && masks_equal && elapsed < 10.0,
            "max |diff| " + fmt("%.3g", worst) + (masks_equal ? ", masks identical" : ", MASKS DIFFER") + ", "
                + fmt("%.2f s", elapsed)};
}

// 2 -------------------------------------------------------------------------

struct SweepResult {
    std::vector<BenchRecord> records;
    double seconds;
};

SweepResult sweep(const BenchConfig& cfg)
{
    const auto t0 = Clock::now();
    auto records = run_sweep(cfg.scenes(), cfg.degradations(), cfg.metric, cfg.jobs);
    return {std::move(records), seconds_since(t0)};
}

std::string rho_text(const std::vector<BenchRecord>& recs, bool filtered, Axis axis)
{
    try {
        const AxisStats s = correlation_stats(recs, filtered, axis);
        return fmt("%.4f", s.rho) + " over " + std::to_string(s.records);
    } catch (const StatsError& e) {
        return e.what();
    }
}

Outcome monotone_degradation(const SweepResult& run)
{
    bool pass = run.seconds < 120.0;
    std::string detail;
    for (Axis axis : {Axis::X, Axis::Y}) {
        try {
            const AxisStats s = correlation_stats(run.records, true, axis);
            pass &= s.records >= 200 && s.rho <= -0.9;
            detail += std::string("rho_") + to_string(axis) + " " + fmt("%.4f", s.rho) + " (" + std::to_string(s.records)
                      + " representative), ";
        } catch (const StatsError& e) {
            pass = false;
            detail += e.what() + std::string(", ");
        }
    }
    return {pass, detail + std::to_string(run.records.size()) + " records, " + fmt("%.1f s", run.seconds)};
}

// 3 -------------------------------------------------------------------------

GrayImage desk_scene(int block, int size = 512)
{
    SceneSpec s;
    s.width = s.height = size;
    s.block_size = block;
    return render(s, DegradationSpec{});
}

Outcome directionality()
{
    const GrayImage base = desk_scene(50);
    const SharpnessReport r0 = analyze(base);
    DegradationSpec bx;
    bx.blur_sigma_x = 2.0;
    DegradationSpec by;
    by.blur_sigma_y = 2.0;
    const SharpnessReport rx = analyze(apply_directional_blur(base, bx));
    const SharpnessReport ry = analyze(apply_directional_blur(base, by));
    const double dxx = r0.s_x - rx.s_x;
    const double dxy = std::abs(r0.s_y - rx.s_y);
    const double dyy = r0.s_y - ry.s_y;
    const double dyx = std::abs(r0.s_x - ry.s_x);
    const bool rep = r0.representative_x && r0.representative_y;
    return {rep && dxx > 5.0 && dxy < 1.0 && dyy > 5.0 && dyx < 1.0,
            "X blur: dS_x " + fmt("%.3f", dxx) + ", |dS_y| " + fmt("%.3f", dxy) + "; Y blur: dS_y " + fmt("%.3f", dyy)
                + ", |dS_x| " + fmt("%.3f", dyx)};
}

// 4 -------------------------------------------------------------------------

Outcome intensity_invariance()
{
    MetricConfig unfiltered;
    unfiltered.pixel_dif_threshold = 0.0;
    const MetricConfig filtered;

    double worst_rel = 0.0;
    double worst_abs = 0.0;
    bool saturated = false;
    for (double sigma : {0.0, 1.0, 2.0}) {
        SceneSpec s;
        s.block_size = 50;
        s.brightness = 0.3;
        s.contrast = 0.4;
        DegradationSpec d;
        d.blur_sigma_x = sigma;
        d.blur_sigma_y = sigma / 2;
        d.noise_sigma = 0.01;
        d.seed = 77;
        const GrayImage img = render(s, d);
        const SharpnessReport base_off = analyze(img, unfiltered);
        const SharpnessReport base_on = analyze(img, filtered);
        for (double scale : {0.5, 0.75, 1.0})
            for (double offset : {-0.1, 0.0, 0.1}) {
                std::vector<double> t;
                for (double v : img.samples()) {
                    t.push_back(scale * v + offset);
                    saturated |= t.back() <= 0.0 || t.back() >= 1.0;
                }
                const GrayImage changed(img.width(), img.height(), t, 16);
                const SharpnessReport off = analyze(changed, unfiltered);
                const SharpnessReport on = analyze(changed, filtered);
                worst_rel = std::max({worst_rel, std::abs(off.s_x - base_off.s_x) / std::abs(base_off.s_x),
                                      std::abs(off.s_y - base_off.s_y) / std::abs(base_off.s_y)});
                worst_abs = std::max({worst_abs, std::abs(on.s_x - base_on.s_x), std::abs(on.s_y - base_on.s_y)});
            }
    }
    return {!saturated && worst_rel < 1e-6 && worst_abs < 1.0,
            "filter off: max relative change " + fmt("%.3g", worst_rel) + "; filter on: max absolute change "
                + fmt("%.4f", worst_abs) + (saturated ? "; SATURATED" : "")};
}

// 5 -------------------------------------------------------------------------

Outcome noise_dispersion()
{
    std::vector<std::vector<SigmaGroup>> per_level;
    std::string detail;
    bool pass = true;
    for (double noise : {0.01, 0.03, 0.05}) {
        BenchConfig cfg;
        cfg.sigma_y = {0.0};
        cfg.noise_sigma = {noise};
        const auto records = sweep(cfg).records;
        try {
            per_level.push_back(correlation_stats(records, true, Axis::X).groups);
        } catch (const StatsError& e) {
            return {false, std::string("noise ") + fmt("%.2f", noise) + ": " + e.what()};
        }
    }
    for (std::size_t g = 0; g < per_level[0].size(); ++g) {
        detail += "sigma " + fmt("%g", per_level[0][g].sigma) + ":";
        for (std::size_t level = 0; level < per_level.size(); ++level) {
            if (per_level[level].size() != per_level[0].size() || per_level[level][g].sigma != per_level[0][g].sigma)
                return {false, "sigma groups differ between noise levels"};
            detail += " " + fmt("%.3f", per_level[level][g].std);
            if (level > 0)
                pass &= per_level[level][g].std >= per_level[level - 1][g].std;
        }
        detail += "; ";
    }
    return {pass, "std(S_x) at noise 0.01/0.03/0.05 per " + detail};
}

// 6 -------------------------------------------------------------------------

bool representative_any(const GrayImage& img, std::string& note)
{
    try {
        const SharpnessReport r = analyze(img);
        note = fmt("r_x %.4g", r.r_x) + fmt(" r_y %.4g", r.r_y);
        return r.representative_x || r.representative_y;
    } catch (const AnalysisError& e) {
        note = e.what();
        return false;
    }
}

bool representative_both(const GrayImage& img, std::string& note)
{
    const SharpnessReport r = analyze(img);
    note = fmt("r_x %.4g", r.r_x) + fmt(" r_y %.4g", r.r_y);
    return r.representative_x && r.representative_y;
}

Outcome gating()
{
    const int n = 512;
    const GrayImage flat = GrayImage::filled(n, n, 0.5);
    const GrayImage noise = add_noise(flat, 0.05, 12345);
    std::vector<double> board;
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            board.push_back((x + y) % 2 ? 0.7 : 0.3);
    const GrayImage checker(n, n, board);

    std::string a, b, c, d;
    const bool flat_rep = representative_any(flat, a);
    const bool noise_rep = representative_any(noise, b);
    const bool checker_rep = representative_any(checker, c);
    const bool blocks_rep = representative_both(desk_scene(100), d);
    return {!flat_rep && !noise_rep && !checker_rep && blocks_rep,
            "constant [" + a + "], noise [" + b + "], checkerboard [" + c + "], n=100 blocks [" + d + "]"};
}

// 7 -------------------------------------------------------------------------

Outcome determinism()
{
    testing::TempDir dir;
    std::ofstream(dir.file("bench.json")) << R"({
        "width": 256, "height": 256, "block_sizes": [10, 50], "brightness": [0.2, 0.35], "contrast": [0.5],
        "sigma_x": [0, 1, 2], "sigma_y": [0, 1.5], "noise_sigma": [0.02], "scene_seed": 9, "noise_seed": 99
    })";
    std::string first, second;
    for (unsigned jobs : {1u, 3u}) {
        cli::BenchOptions opts;
        opts.config = dir.file("bench.json");
        opts.output = dir.file("records-" + std::to_string(jobs) + ".csv");
        opts.stats = dir.file("stats.json");
        opts.jobs = jobs;
        std::ostringstream out, err;
        if (cli::cmd_bench(opts, out, err) != cli::exit_ok)
            return {false, "cmd_bench failed: " + err.str()};
        std::ifstream in(opts.output, std::ios::binary);
        (jobs == 1 ? first : second).assign(std::istreambuf_iterator<char>(in), {});
    }
    const bool same = !first.empty() && first == second;
    return {same, std::to_string(first.size()) + " bytes per run, " + (same ? "identical" : "DIFFERENT")};
}

// 8 -------------------------------------------------------------------------

Outcome throughput()
{
    SceneSpec s;
    s.width = s.height = 1024;
    s.block_size = 50;
    DegradationSpec d;
    d.blur_sigma_x = 1.0;
    d.noise_sigma = 0.01;
    testing::TempDir dir;
    save_image(dir.file("big.tif"), render(s, d), 16);
    const GrayImage img = load_image(dir.file("big.tif"));

    double best = 1e9;
    for (int i = 0; i < 3; ++i) {
        const auto t0 = Clock::now();
        (void)analyze(img);
        best = std::min(best, seconds_since(t0));
    }
    return {img.source_depth() == 16 && best < 1.0, "1024x1024 16-bit analyze " + fmt("%.3f s", best)};
}

} // namespace

int main()
{
    int failures = 0;
    auto report = [&](int id, const char* title, const std::function<Outcome()>& fn) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
        std::fflush(stdout);
    };

    report(1, "oracle equivalence", oracle_equivalence);

    const SweepResult desk = sweep(BenchConfig{});
    report(2, "monotone degradation", [&] { return monotone_degradation(desk); });
    {
        // Not gating: the same sweep with the single-image default band.
        BenchConfig plain;
        plain.metric = MetricConfig{};
        const SweepResult alt = sweep(plain);
        std::printf("       note: default 98.5-99.5 band on the same sweep: rho_x %s, rho_y %s\n",
                    rho_text(alt.records, true, Axis::X).c_str(), rho_text(alt.records, true, Axis::Y).c_str());
    }

    report(3, "directionality", directionality);
    report(4, "brightness/contrast invariance", intensity_invariance);
    report(5, "noise dispersion", noise_dispersion);
    report(6, "representativeness gating", gating);
    report(7, "determinism", determinism);
    report(8, "throughput", throughput);

    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
