"""Direction-aware no-reference sharpness analysis."""

from ._core import (
    MIN_ANALYZABLE_SIZE,
    AnalysisError,
    AxisStats,
    BenchConfig,
    BenchRecord,
    ConfigError,
    DegradationSpec,
    Error,
    GrayImage,
    ImageIoError,
    Kernel2D,
    MetricConfig,
    SceneSpec,
    SharpnessReport,
    SigmaGroup,
    StatsError,
    add_noise,
    analyze,
    apply_directional_blur,
    apply_psf,
    bench_stats_json,
    correlation_stats,
    default_psf,
    filter_anomalous_pixels,
    gaussian_blur_1d,
    gaussian_kernel,
    generate_scene,
    load_image,
    low_high_mask,
    percentile_mask,
    render,
    run_sweep,
    save_image,
    sobel_gradient,
    spearman,
)

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]
