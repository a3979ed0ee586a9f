#include "gradsharp/records.hpp"

#include "detail/csv.hpp"

#include <json.hpp>

#include <ostream>

namespace gradsharp {

using detail::format_double;

const std::vector<std::string>& bench_csv_columns()
{
    static const std::vector<std::string> columns = {
        "width",          "height",           "block_size",       "brightness",
        "contrast",       "scene_seed",       "psf_width",        "psf_height",
        "blur_sigma_x",   "blur_sigma_y",     "blur_size",        "noise_sigma",
        "noise_seed",     "s_x",              "s_y",              "r_x",
        "r_y",            "selected_count_x", "selected_count_y", "representative_x",
        "representative_y", "error",
    };
    return columns;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records)
{
    out << detail::csv_line(bench_csv_columns()) << '\n';
    for (const BenchRecord& r : records) {
        const SceneSpec& s = r.scene;
        const DegradationSpec& d = r.degradation;
        std::vector<std::string> row = {
            std::to_string(s.width),        std::to_string(s.height),        std::to_string(s.block_size),
            format_double(s.brightness),    format_double(s.contrast),       std::to_string(s.seed),
            std::to_string(d.psf.width),    std::to_string(d.psf.height),    format_double(d.blur_sigma_x),
            format_double(d.blur_sigma_y),  std::to_string(d.blur_size),     format_double(d.noise_sigma),
            std::to_string(d.seed),
        };
        if (r.ok()) {
            const SharpnessReport& rep = r.report;
            row.insert(row.end(), {format_double(rep.s_x), format_double(rep.s_y), format_double(rep.r_x),
                                   format_double(rep.r_y), std::to_string(rep.selected_count_x),
                                   std::to_string(rep.selected_count_y), rep.representative_x ? "true" : "false",
                                   rep.representative_y ? "true" : "false", ""});
        } else {
            row.insert(row.end(), {"", "", "", "", "0", "0", "false", "false", r.error});
        }
        out << detail::csv_line(row) << '\n';
    }
}

void write_bench_jsonl(std::ostream& out, const std::vector<BenchRecord>& records)
{
    for (const BenchRecord& r : records) {
        nlohmann::ordered_json obj;
        obj["scene"] = {
            {"width", r.scene.width},           {"height", r.scene.height},
            {"block_size", r.scene.block_size}, {"brightness", r.scene.brightness},
            {"contrast", r.scene.contrast},     {"seed", r.scene.seed},
        };
        obj["degradation"] = {
            {"psf_width", r.degradation.psf.width},   {"psf_height", r.degradation.psf.height},
            {"blur_sigma_x", r.degradation.blur_sigma_x}, {"blur_sigma_y", r.degradation.blur_sigma_y},
            {"blur_size", r.degradation.blur_size},   {"noise_sigma", r.degradation.noise_sigma},
            {"seed", r.degradation.seed},
        };
        if (r.ok())
            obj["report"] = nlohmann::ordered_json::parse(report_to_json(r.report));
        else
            obj["report"] = nullptr;
        obj["error"] = r.ok() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.error);
        out << obj.dump() << '\n';
    }
}

} // namespace gradsharp
