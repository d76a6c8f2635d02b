import numpy as np
import pytest

from photonic_rc.encoding.basket import make_codec
from photonic_rc.models.errors import (
    CalibrationError,
    InvalidParameterError,
    ResourceError,
    ShapeError,
)
from photonic_rc.optics.camera import (
    calibrate_scale,
    detect,
    field,
    propagate,
    warmup_patterns,
)
from photonic_rc.optics.layer_optics import make_layer_optics
from photonic_rc.optics.transmission import (
    build_transmission,
    transmission_from_metadata,
)

SEED = 1234
SATURATION_TARGET = 0.01
SATURATION_TOLERANCE = 0.005


@pytest.fixture
def small_optics():
    """Instance 8 x 8 sans biais : 4 bits d'entrée, 4 bits d'état."""
    model = build_transmission(SEED, 8, 8)
    layer = make_layer_optics(8, 4, 4, 0, 0.0, bias_seed=0, layer_index=1)
    return model, layer


# ==== TESTS TRANSMISSION ==== #


def test_transmission_is_deterministic() -> None:
    a = build_transmission(SEED, 16, 32)
    b = build_transmission(SEED, 16, 32)
    assert np.array_equal(a.matrix, b.matrix)


def test_transmission_seed_changes_matrix() -> None:
    a = build_transmission(1, 16, 32)
    b = build_transmission(2, 16, 32)
    assert not np.array_equal(a.matrix, b.matrix)


def test_transmission_unit_variance() -> None:
    model = build_transmission(SEED, 1000, 1000)
    mean_power = float(np.mean(np.abs(model.matrix) ** 2))
    assert 0.95 <= mean_power <= 1.05


def test_transmission_memory_cap() -> None:
    with pytest.raises(ResourceError):
        build_transmission(SEED, 1000, 1000, max_elements=10_000)


def test_transmission_regenerated_from_metadata() -> None:
    model = build_transmission(SEED, 4, 6)
    again = transmission_from_metadata(model.metadata())
    assert np.array_equal(model.matrix, again.matrix)


# ==== TESTS PROPAGATION ==== #


def test_zero_pattern_gives_zero_intensity(small_optics) -> None:
    model, layer = small_optics
    intensity = propagate(np.zeros(8, dtype=np.uint8), model, layer)
    assert np.all(intensity == 0.0)
    assert np.all(detect(intensity, 1.0) == 0)


def test_single_bit_selects_one_column(small_optics) -> None:
    model, layer = small_optics
    pattern = np.zeros(8, dtype=np.uint8)
    pattern[5] = 1
    expected = np.abs(model.matrix[:, 5]) ** 2
    assert np.allclose(propagate(pattern, model, layer), expected, rtol=1e-12)


def test_field_is_additive_on_disjoint_supports(small_optics) -> None:
    model, layer = small_optics
    p1 = np.array([1, 0, 1, 0, 0, 0, 0, 0], dtype=np.uint8)
    p2 = np.array([0, 1, 0, 0, 0, 1, 0, 1], dtype=np.uint8)
    joint = field(p1 | p2, model, layer)
    assert np.allclose(joint, field(p1, model, layer) + field(p2, model, layer), atol=1e-12)


def test_intensity_has_cross_terms(small_optics) -> None:
    model, layer = small_optics
    p1 = np.array([1, 0, 1, 0, 0, 0, 0, 0], dtype=np.uint8)
    p2 = np.array([0, 1, 0, 0, 0, 1, 0, 1], dtype=np.uint8)
    summed = propagate(p1, model, layer) + propagate(p2, model, layer)
    assert not np.allclose(propagate(p1 | p2, model, layer), summed)


def test_one_bit_flip_changes_output(small_optics) -> None:
    model, layer = small_optics
    p1 = np.array([1, 1, 0, 1, 0, 1, 1, 0], dtype=np.uint8)
    p2 = p1.copy()
    p2[2] = 1
    assert not np.array_equal(propagate(p1, model, layer), propagate(p2, model, layer))


def test_pattern_length_mismatch(small_optics) -> None:
    model, layer = small_optics
    with pytest.raises(ShapeError):
        propagate(np.zeros(7, dtype=np.uint8), model, layer)


def test_wrong_bias_region_rejected() -> None:
    model = build_transmission(SEED, 4, 12)
    layer = make_layer_optics(4, 4, 4, 4, 0.5, bias_seed=9, layer_index=1)
    pattern = layer.assemble(np.zeros(4, dtype=np.uint8), np.zeros(4, dtype=np.uint8))
    pattern[8:] = 1 - pattern[8:]
    with pytest.raises(ShapeError):
        propagate(pattern, model, layer)


def test_layers_with_different_bias_differ() -> None:
    model = build_transmission(SEED, 8, 40)
    first = make_layer_optics(8, 10, 10, 20, 0.3, bias_seed=5, layer_index=1)
    second = make_layer_optics(8, 10, 10, 20, 0.3, bias_seed=5, layer_index=2)
    assert not np.array_equal(first.bias_pattern, second.bias_pattern)
    u = np.ones(10, dtype=np.uint8)
    x = np.zeros(10, dtype=np.uint8)
    out1 = detect(propagate(first.assemble(u, x), model, first), 100.0)
    out2 = detect(propagate(second.assemble(u, x), model, second), 100.0)
    assert not np.array_equal(out1, out2)


# ==== TESTS BIAIS ==== #


@pytest.mark.parametrize("fraction", [0.0, 0.1, 0.3, 1.0])
def test_bias_on_fraction(fraction: float) -> None:
    layer = make_layer_optics(25, 10, 250, 200, fraction, bias_seed=3, layer_index=1)
    assert abs(layer.bias_on_fraction - fraction) <= 1 / 200


def test_column_regions_are_disjoint_and_cover() -> None:
    layer = make_layer_optics(25, 30, 250, 200, 0.1, bias_seed=3, layer_index=2)
    cols = [*layer.input_cols, *layer.state_cols, *layer.bias_cols]
    assert len(set(cols)) == len(cols) == layer.pattern_width
    assert cols == list(layer.col_range)


# ==== TESTS DÉTECTION ==== #


def test_detect_saturation_boundary() -> None:
    scale = 3.7
    assert detect([scale], scale)[0] == 255
    assert detect([scale / 2], scale)[0] == 128
    assert detect([4 * scale], scale)[0] == 255


def test_detect_rejects_non_positive_scale() -> None:
    with pytest.raises(InvalidParameterError):
        detect([1.0], 0.0)


# ==== TESTS CALIBRATION ==== #


def test_calibration_constant_intensity() -> None:
    model = build_transmission(SEED, 1, 4)
    layer = make_layer_optics(1, 0, 0, 4, 1.0, bias_seed=0, layer_index=1)
    patterns = np.tile(layer.bias_pattern, (32, 1))
    constant = float(propagate(layer.bias_pattern, model, layer)[0])
    assert calibrate_scale(model, layer, patterns, 99.0) == pytest.approx(constant, rel=1e-12)


def test_calibration_percentile_100_never_saturates() -> None:
    codec = make_codec(10)
    model = build_transmission(SEED, 25, 400)
    layer = make_layer_optics(25, 20, 250, 100, 0.2, bias_seed=1, layer_index=1)
    patterns = warmup_patterns(layer, codec, 64, seed=SEED)
    scale = calibrate_scale(model, layer, patterns, 100.0)
    assert np.all(propagate(patterns, model, layer) <= scale)


def test_calibrated_saturation_on_fresh_patterns() -> None:
    codec = make_codec(10)
    model = build_transmission(SEED, 100, 1200)
    layer = make_layer_optics(100, 20, 1000, 100, 0.1, bias_seed=1, layer_index=1)
    scale = calibrate_scale(model, layer, warmup_patterns(layer, codec, 256, seed=11), 99.0)
    fresh = propagate(warmup_patterns(layer, codec, 256, seed=22), model, layer)
    saturated = float(np.mean(fresh > scale))
    assert abs(saturated - SATURATION_TARGET) <= SATURATION_TOLERANCE


def test_warmup_streams_differ_per_layer() -> None:
    codec = make_codec(10)
    layer = make_layer_optics(10, 40, 100, 20, 0.5, bias_seed=1, layer_index=1)
    first = warmup_patterns(layer, codec, 16, seed=SEED, layer_index=1)
    again = warmup_patterns(layer, codec, 16, seed=SEED, layer_index=1)
    second = warmup_patterns(layer, codec, 16, seed=SEED, layer_index=2)
    assert np.array_equal(first, again)
    assert not np.array_equal(first, second)


def test_calibration_rejects_degenerate_optics() -> None:
    model = build_transmission(SEED, 4, 8)
    layer = make_layer_optics(4, 4, 4, 0, 0.0, bias_seed=0, layer_index=1)
    with pytest.raises(CalibrationError):
        calibrate_scale(model, layer, np.zeros((32, 8), dtype=np.uint8))


@pytest.mark.parametrize(("count", "percentile"), [(31, 99.0), (32, 50.0), (32, 100.5)])
def test_calibration_preconditions(count: int, percentile: float) -> None:
    model = build_transmission(SEED, 4, 8)
    layer = make_layer_optics(4, 4, 4, 0, 0.0, bias_seed=0, layer_index=1)
    patterns = np.ones((count, 8), dtype=np.uint8)
    with pytest.raises(InvalidParameterError):
        calibrate_scale(model, layer, patterns, percentile)
