import json

import numpy as np
import pytest

import gradsharp as gs


def block_image(n=50, size=256, sigma_x=0.0):
    scene = gs.SceneSpec(width=size, height=size, block_size=n)
    return gs.render(scene, gs.DegradationSpec(blur_sigma_x=sigma_x))


def test_image_round_trip_through_numpy():
    raw = np.arange(12, dtype=np.uint16).reshape(3, 4) * 5000
    img = gs.GrayImage(raw)
    assert img.shape == (3, 4)
    assert img.source_depth == 16
    np.testing.assert_allclose(img.to_numpy(), raw / 65535.0)
    np.testing.assert_array_equal(img.quantize(16), raw)

    floats = gs.GrayImage(np.full((2, 5), 0.25))
    assert floats.source_depth == 8
    assert floats.mean() == pytest.approx(0.25)

    with pytest.raises(ValueError):
        gs.GrayImage(np.zeros(5))


def test_analyze_reports_direction_aware_scores():
    sharp = gs.analyze(block_image())
    soft = gs.analyze(block_image(sigma_x=2.0))
    assert sharp.representative_x and sharp.representative_y
    assert sharp.s_x - soft.s_x > 5.0
    assert abs(sharp.s_y - soft.s_y) < 1.0
    assert set(json.loads(sharp.to_json())) == set(sharp.to_dict())


def test_config_and_errors():
    cfg = gs.MetricConfig(percentile_low=99.5, percentile_high=99.9)
    assert cfg.rep_kernel_size == 15
    assert gs.MetricConfig.from_json(cfg.to_json()) == cfg
    with pytest.raises(TypeError):
        gs.MetricConfig(bogus=1)
    with pytest.raises(gs.ConfigError, match="sobel_size must be odd"):
        gs.analyze(block_image(), gs.MetricConfig(sobel_size=4))
    with pytest.raises(gs.AnalysisError):
        gs.analyze(gs.GrayImage.filled(64, 64, 0.5))
    assert issubclass(gs.AnalysisError, gs.Error)
    assert issubclass(gs.Error, RuntimeError)


def test_stage_functions():
    img = block_image(n=10, size=64)
    filtered = gs.filter_anomalous_pixels(img, 0.5)
    mask = gs.low_high_mask(filtered)
    assert mask.dtype == np.bool_ and mask.shape == (64, 64)
    grad, support = gs.sobel_gradient(filtered, mask, 5, "x")
    assert grad.shape == support.shape == (64, 64)
    selected, lo, hi = gs.percentile_mask(grad, support, 98.5, 99.5)
    assert 0 < lo <= hi
    assert selected.sum() > 0
    assert np.all(np.abs(grad[selected]) >= lo)

    k = gs.gaussian_kernel(5, 1.0)
    assert sum(k) == pytest.approx(1.0)
    blurred = gs.gaussian_blur_1d(img, 5, 1.0, "y")
    assert blurred.mean() == pytest.approx(img.mean())
    with pytest.raises(ValueError):
        gs.gaussian_blur_1d(img, 5, 1.0, "z")


def test_io_round_trip(tmp_path):
    img = block_image(n=10, size=64)
    for name, depth in (("a.png", 8), ("b.tif", 16)):
        path = str(tmp_path / name)
        gs.save_image(path, img, depth)
        back = gs.load_image(path)
        assert back.source_depth == depth
        np.testing.assert_array_equal(back.quantize(depth), img.quantize(depth))
    (tmp_path / "bad.png").write_bytes(b"not a png")
    with pytest.raises(gs.ImageIoError):
        gs.load_image(str(tmp_path / "bad.png"))


def test_sweep_and_stats():
    scenes = [gs.SceneSpec(width=128, height=128, block_size=n) for n in (10, 20)]
    degs = [gs.DegradationSpec(blur_sigma_x=s, noise_sigma=0.01, seed=i) for i, s in enumerate((0, 1, 2))]
    records = gs.run_sweep(scenes, degs, gs.BenchConfig.desk_metric(), jobs=2)
    assert len(records) == 6
    assert all(r.ok for r in records)
    stats = gs.correlation_stats(records, filtered=True, axis="x")
    assert stats.rho < -0.8
    assert [g.sigma for g in stats.groups] == [0, 1, 2]
    doc = json.loads(gs.bench_stats_json(records))
    assert "error" in doc["filtered"]["y"]
    again = gs.run_sweep(scenes, degs, gs.BenchConfig.desk_metric(), jobs=1)
    assert [r.report for r in again] == [r.report for r in records]


def test_psf_kernel():
    psf = gs.default_psf()
    assert (psf.width, psf.height) == (5, 5)
    assert psf.sum() == pytest.approx(1.0)
    box = gs.Kernel2D(np.full((3, 3), 1 / 9))
    flat = gs.apply_psf(gs.GrayImage.filled(8, 8, 0.4), box)
    np.testing.assert_allclose(flat.to_numpy(), 0.4)
    assert gs.Kernel2D.parse("1\n").to_numpy().tolist() == [[1.0]]
