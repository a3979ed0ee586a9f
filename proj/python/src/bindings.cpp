#include "gradsharp/bench_config.hpp"
#include "gradsharp/config.hpp"
#include "gradsharp/error.hpp"
#include "gradsharp/gradient.hpp"
#include "gradsharp/io.hpp"
#include "gradsharp/metric.hpp"
#include "gradsharp/preprocess.hpp"
#include "gradsharp/stats.hpp"
#include "gradsharp/synth.hpp"

#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

namespace py = pybind11;
using namespace gradsharp;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

void check_2d(const py::array& a)
{
    if (a.ndim() != 2)
        throw py::value_error("expected a 2-D array");
}

GrayImage image_from_array(const py::array& array, int source_depth)
{
    check_2d(array);
    const int h = static_cast<int>(array.shape(0));
    const int w = static_cast<int>(array.shape(1));
    if (py::isinstance<py::array_t<std::uint8_t>>(array) || py::isinstance<py::array_t<std::uint16_t>>(array)) {
        const int depth = array.itemsize() == 1 ? 8 : 16;
        auto raw = py::array_t<std::uint16_t, py::array::c_style | py::array::forcecast>::ensure(array);
        return GrayImage::from_raw(w, h, std::span<const std::uint16_t>(raw.data(), raw.size()), depth);
    }
    const DoubleArray values = DoubleArray::ensure(array);
    if (!values)
        throw py::type_error("expected a numeric array");
    return GrayImage(w, h, std::vector<double>(values.data(), values.data() + values.size()), source_depth);
}

py::array_t<double> to_array(std::span<const double> values, int width, int height)
{
    py::array_t<double> out({height, width});
    std::memcpy(out.mutable_data(), values.data(), values.size() * sizeof(double));
    return out;
}

py::array_t<bool> mask_to_array(const BinaryMask& mask)
{
    py::array_t<bool> out({mask.height(), mask.width()});
    bool* dst = out.mutable_data();
    for (std::size_t i = 0; i < mask.size(); ++i)
        dst[i] = mask[i];
    return out;
}

BinaryMask mask_from_array(const py::array& array)
{
    check_2d(array);
    auto bits = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>::ensure(array.attr("astype")("uint8"));
    return BinaryMask(static_cast<int>(array.shape(1)), static_cast<int>(array.shape(0)),
                      std::vector<std::uint8_t>(bits.data(), bits.data() + bits.size()));
}

Axis axis_from(const std::string& name)
{
    if (name == "x" || name == "X")
        return Axis::X;
    if (name == "y" || name == "Y")
        return Axis::Y;
    throw py::value_error("axis must be 'x' or 'y'");
}

py::dict report_dict(const SharpnessReport& r)
{
    py::dict d;
    d["s_x"] = r.s_x;
    d["s_y"] = r.s_y;
    d["r_x"] = r.r_x;
    d["r_y"] = r.r_y;
    d["selected_count_x"] = r.selected_count_x;
    d["selected_count_y"] = r.selected_count_y;
    d["representative_x"] = r.representative_x;
    d["representative_y"] = r.representative_y;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Direction-aware no-reference sharpness analysis";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ImageIoError>(m, "ImageIoError", error.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
    py::register_exception<AnalysisError>(m, "AnalysisError", error.ptr());
    py::register_exception<StatsError>(m, "StatsError", error.ptr());

    m.attr("MIN_ANALYZABLE_SIZE") = min_analyzable_size;

    py::class_<MetricConfig>(m, "MetricConfig")
        .def(py::init<>())
        .def(py::init([](py::kwargs kwargs) {
            MetricConfig cfg;
            py::object obj = py::cast(cfg);
            for (auto [key, value] : kwargs) {
                if (!py::hasattr(obj, key))
                    throw py::type_error("unknown MetricConfig field " + py::str(key).cast<std::string>());
                py::setattr(obj, key, value);
            }
            return obj.cast<MetricConfig>();
        }))
        .def_readwrite("percentile_low", &MetricConfig::percentile_low)
        .def_readwrite("percentile_high", &MetricConfig::percentile_high)
        .def_readwrite("sobel_size", &MetricConfig::sobel_size)
        .def_readwrite("gauss_size", &MetricConfig::gauss_size)
        .def_readwrite("gauss_sigma", &MetricConfig::gauss_sigma)
        .def_readwrite("rep_scale", &MetricConfig::rep_scale)
        .def_readwrite("rep_sigma", &MetricConfig::rep_sigma)
        .def_readwrite("pixel_dif_threshold", &MetricConfig::pixel_dif_threshold)
        .def_readwrite("low_threshold", &MetricConfig::low_threshold)
        .def_readwrite("high_threshold", &MetricConfig::high_threshold)
        .def_readwrite("rep_threshold", &MetricConfig::rep_threshold)
        .def_property_readonly("rep_kernel_size", &MetricConfig::rep_kernel_size)
        .def("validate", [](const MetricConfig& c) { validate_config(c); })
        .def("to_json", &config_to_json)
        .def_static("from_json", &config_from_json)
        .def_static("load", &load_config)
        .def(py::self == py::self)
        .def("__repr__", [](const MetricConfig& c) { return "MetricConfig(" + config_to_json(c) + ")"; });

    py::class_<GrayImage>(m, "GrayImage")
        .def(py::init(&image_from_array), py::arg("array"), py::arg("source_depth") = 8,
             "From a 2-D array. uint8/uint16 arrays are normalized by their depth; floats are taken as [0,1].")
        .def_static("filled", &GrayImage::filled, py::arg("width"), py::arg("height"), py::arg("value"),
                    py::arg("source_depth") = 8)
        .def_property_readonly("width", &GrayImage::width)
        .def_property_readonly("height", &GrayImage::height)
        .def_property_readonly("source_depth", &GrayImage::source_depth)
        .def_property_readonly("shape", [](const GrayImage& i) { return py::make_tuple(i.height(), i.width()); })
        .def("mean", &GrayImage::mean)
        .def("to_numpy", [](const GrayImage& i) { return to_array(i.samples(), i.width(), i.height()); })
        .def("quantize", [](const GrayImage& i, int depth) {
            const auto codes = i.quantize(depth);
            py::array_t<std::uint16_t> out({i.height(), i.width()});
            std::memcpy(out.mutable_data(), codes.data(), codes.size() * sizeof(std::uint16_t));
            return out;
        });

    m.def("load_image", &load_image, py::arg("path"));
    m.def("save_image", &save_image, py::arg("path"), py::arg("image"), py::arg("depth") = 0);

    m.def(
        "filter_anomalous_pixels",
        [](const GrayImage& img, double theta) { return filter_anomalous_pixels(img, {theta}); }, py::arg("image"),
        py::arg("theta") = 0.5);
    m.def(
        "low_high_mask",
        [](const GrayImage& img, double low, double high) { return mask_to_array(low_high_mask(img, low, high)); },
        py::arg("image"), py::arg("low") = 0.0, py::arg("high") = 1.0);

    m.def(
        "sobel_gradient",
        [](const GrayImage& img, const py::object& valid, int size, const std::string& axis) {
            const BinaryMask mask = valid.is_none() ? BinaryMask(img.width(), img.height(), true)
                                                    : mask_from_array(valid.cast<py::array>());
            const GradientField g = sobel_gradient(img, mask, size, axis_from(axis));
            return py::make_tuple(to_array(g.values(), g.width(), g.height()), mask_to_array(g.support()));
        },
        py::arg("image"), py::arg("valid") = py::none(), py::arg("size") = 5, py::arg("axis") = "x",
        "Returns (gradient, support) arrays.");
    m.def(
        "percentile_mask",
        [](const DoubleArray& values, const py::array& support, double p_low, double p_high) {
            check_2d(values);
            const int h = static_cast<int>(values.shape(0));
            const int w = static_cast<int>(values.shape(1));
            const GradientField g(Axis::X, w, h, std::vector<double>(values.data(), values.data() + values.size()),
                                  mask_from_array(support));
            const SelectedGradients sel = percentile_mask(g, p_low, p_high);
            return py::make_tuple(mask_to_array(sel.mask), sel.lower_value, sel.upper_value);
        },
        py::arg("gradient"), py::arg("support"), py::arg("p_low") = 98.5, py::arg("p_high") = 99.5,
        "Returns (mask, lower_bound, upper_bound).");
    m.def("gaussian_kernel", &gaussian_kernel, py::arg("size"), py::arg("sigma"));
    m.def(
        "gaussian_blur_1d",
        [](const GrayImage& img, int size, double sigma, const std::string& axis) {
            return gaussian_blur_1d(img, size, sigma, axis_from(axis));
        },
        py::arg("image"), py::arg("size") = 5, py::arg("sigma") = 1.0, py::arg("axis") = "x");

    py::class_<SharpnessReport>(m, "SharpnessReport")
        .def(py::init<>())
        .def_readonly("s_x", &SharpnessReport::s_x)
        .def_readonly("s_y", &SharpnessReport::s_y)
        .def_readonly("r_x", &SharpnessReport::r_x)
        .def_readonly("r_y", &SharpnessReport::r_y)
        .def_readonly("selected_count_x", &SharpnessReport::selected_count_x)
        .def_readonly("selected_count_y", &SharpnessReport::selected_count_y)
        .def_readonly("representative_x", &SharpnessReport::representative_x)
        .def_readonly("representative_y", &SharpnessReport::representative_y)
        .def("to_dict", &report_dict)
        .def("to_json", [](const SharpnessReport& r) { return report_to_json(r); })
        .def(py::self == py::self)
        .def("__repr__", [](const SharpnessReport& r) { return "SharpnessReport(" + report_to_json(r) + ")"; });

    m.def(
        "analyze",
        [](const GrayImage& img, const MetricConfig& cfg) {
            py::gil_scoped_release release;
            return analyze(img, cfg);
        },
        py::arg("image"), py::arg("config") = MetricConfig{});

    py::class_<SceneSpec>(m, "SceneSpec")
        .def(py::init([](int width, int height, int block_size, double brightness, double contrast,
                         std::uint64_t seed) { return SceneSpec{width, height, block_size, brightness, contrast, seed}; }),
             py::arg("width") = 512, py::arg("height") = 512, py::arg("block_size") = 50, py::arg("brightness") = 0.2,
             py::arg("contrast") = 0.5, py::arg("seed") = 0)
        .def_readwrite("width", &SceneSpec::width)
        .def_readwrite("height", &SceneSpec::height)
        .def_readwrite("block_size", &SceneSpec::block_size)
        .def_readwrite("brightness", &SceneSpec::brightness)
        .def_readwrite("contrast", &SceneSpec::contrast)
        .def_readwrite("seed", &SceneSpec::seed);

    py::class_<Kernel2D>(m, "Kernel2D")
        .def(py::init([](const DoubleArray& taps) {
                 check_2d(taps);
                 return Kernel2D{static_cast<int>(taps.shape(1)), static_cast<int>(taps.shape(0)),
                                 std::vector<double>(taps.data(), taps.data() + taps.size())};
             }),
             py::arg("taps"))
        .def_static("identity", &Kernel2D::identity)
        .def_static("gaussian", &Kernel2D::gaussian, py::arg("size"), py::arg("sigma"))
        .def_static("load", &load_psf, py::arg("path"))
        .def_static("parse", &parse_psf, py::arg("text"))
        .def_readonly("width", &Kernel2D::width)
        .def_readonly("height", &Kernel2D::height)
        .def("sum", &Kernel2D::sum)
        .def("to_numpy", [](const Kernel2D& k) { return to_array(k.taps, k.width, k.height); });
    m.def("default_psf", &default_psf);

    py::class_<DegradationSpec>(m, "DegradationSpec")
        .def(py::init([](double sx, double sy, double noise, std::uint64_t seed, int blur_size,
                         const std::optional<Kernel2D>& psf) {
                 DegradationSpec d;
                 d.blur_sigma_x = sx;
                 d.blur_sigma_y = sy;
                 d.noise_sigma = noise;
                 d.seed = seed;
                 d.blur_size = blur_size;
                 if (psf)
                     d.psf = *psf;
                 return d;
             }),
             py::arg("blur_sigma_x") = 0.0, py::arg("blur_sigma_y") = 0.0, py::arg("noise_sigma") = 0.0,
             py::arg("seed") = 0, py::arg("blur_size") = 9, py::arg("psf") = py::none())
        .def_readwrite("blur_sigma_x", &DegradationSpec::blur_sigma_x)
        .def_readwrite("blur_sigma_y", &DegradationSpec::blur_sigma_y)
        .def_readwrite("noise_sigma", &DegradationSpec::noise_sigma)
        .def_readwrite("seed", &DegradationSpec::seed)
        .def_readwrite("blur_size", &DegradationSpec::blur_size)
        .def_readwrite("psf", &DegradationSpec::psf);

    py::class_<BenchRecord>(m, "BenchRecord")
        .def_readonly("scene", &BenchRecord::scene)
        .def_readonly("degradation", &BenchRecord::degradation)
        .def_readonly("report", &BenchRecord::report)
        .def_readonly("error", &BenchRecord::error)
        .def_property_readonly("ok", &BenchRecord::ok);

    m.def("generate_scene", &generate_scene, py::arg("scene"));
    m.def("apply_psf", &apply_psf, py::arg("image"), py::arg("psf"));
    m.def("apply_directional_blur", &apply_directional_blur, py::arg("image"), py::arg("degradation"));
    m.def("add_noise", &add_noise, py::arg("image"), py::arg("noise_sigma"), py::arg("seed"));
    m.def("render", &render, py::arg("scene"), py::arg("degradation"));
    m.def(
        "run_sweep",
        [](const std::vector<SceneSpec>& scenes, const std::vector<DegradationSpec>& degs, const MetricConfig& cfg,
           unsigned jobs) {
            py::gil_scoped_release release;
            return run_sweep(scenes, degs, cfg, jobs);
        },
        py::arg("scenes"), py::arg("degradations"), py::arg("config") = MetricConfig{}, py::arg("jobs") = 0);

    py::class_<BenchConfig>(m, "BenchConfig")
        .def(py::init<>())
        .def_static("load", &load_bench_config, py::arg("path"))
        .def_static("from_json", &bench_config_from_json, py::arg("text"), py::arg("base_dir") = "")
        .def_static("desk_metric", &BenchConfig::desk_metric)
        .def_readwrite("width", &BenchConfig::width)
        .def_readwrite("height", &BenchConfig::height)
        .def_readwrite("block_sizes", &BenchConfig::block_sizes)
        .def_readwrite("brightness", &BenchConfig::brightness)
        .def_readwrite("contrast", &BenchConfig::contrast)
        .def_readwrite("scene_seed", &BenchConfig::scene_seed)
        .def_readwrite("sigma_x", &BenchConfig::sigma_x)
        .def_readwrite("sigma_y", &BenchConfig::sigma_y)
        .def_readwrite("noise_sigma", &BenchConfig::noise_sigma)
        .def_readwrite("blur_size", &BenchConfig::blur_size)
        .def_readwrite("noise_seed", &BenchConfig::noise_seed)
        .def_readwrite("metric", &BenchConfig::metric)
        .def_readwrite("jobs", &BenchConfig::jobs)
        .def("scenes", &BenchConfig::scenes)
        .def("degradations", &BenchConfig::degradations);

    py::class_<SigmaGroup>(m, "SigmaGroup")
        .def_readonly("sigma", &SigmaGroup::sigma)
        .def_readonly("count", &SigmaGroup::count)
        .def_readonly("mean", &SigmaGroup::mean)
        .def_readonly("std", &SigmaGroup::std);
    py::class_<AxisStats>(m, "AxisStats")
        .def_property_readonly("axis", [](const AxisStats& s) { return std::string(to_string(s.axis)); })
        .def_readonly("filtered", &AxisStats::filtered)
        .def_readonly("records", &AxisStats::records)
        .def_readonly("rho", &AxisStats::rho)
        .def_readonly("groups", &AxisStats::groups);

    m.def("spearman", [](const std::vector<double>& a, const std::vector<double>& b) { return spearman(a, b); });
    m.def(
        "correlation_stats",
        [](const std::vector<BenchRecord>& records, bool filtered, const std::string& axis) {
            return correlation_stats(records, filtered, axis_from(axis));
        },
        py::arg("records"), py::arg("filtered") = true, py::arg("axis") = "x");
    m.def("bench_stats_json", &bench_stats_json, py::arg("records"));
}
