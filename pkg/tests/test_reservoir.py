from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from photonic_rc.config.models import DeepConfig, OpticsConfig
from photonic_rc.encoding.basket import encode_vector
from photonic_rc.encoding.quantize import dequantize8
from photonic_rc.models.errors import (
    AllocationError,
    InvalidInputError,
    InvalidParameterError,
    ShapeError,
)
from photonic_rc.optics.camera import detect, propagate
from photonic_rc.optics.transmission import transmission_from_metadata
from photonic_rc.reservoir.allocation import allocate_neurons, bias_profile, leakage_schedule
from photonic_rc.reservoir.deep_reservoir import build_reservoir
from photonic_rc.reservoir.layers import LayerConfig, build_layer_configs, input_widths
from photonic_rc.tracking.trajectory_logger import TrajectoryRecorder

N_FEATURES = 3
OPTICS = OpticsConfig(warmup_patterns=32)
QUANT_SLACK = 1 / 255


def small_deep(**overrides) -> DeepConfig:
    params = {
        "depth": 2,
        "total_neurons": 50,
        "allocation": "uniform",
        "bias_width": 20,
        "n_bin": 10,
    }
    params.update(overrides)
    return DeepConfig(**params)


def make_reservoir(**overrides):
    return build_reservoir(
        small_deep(**overrides), N_FEATURES, optics_seed=11, bias_seed=22, optics_config=OPTICS
    )


def random_frames(shape: tuple[int, ...], seed: int = 0) -> np.ndarray:
    return np.random.default_rng(seed).uniform(0.0, 1.0, size=shape)


# ==== TESTS ALLOCATION ==== #


def test_allocation_power_law_reference() -> None:
    assert allocate_neurons(500, 5, 1.2, "decreasing") == [250, 100, 75, 50, 25]


def test_allocation_increasing_is_reversed() -> None:
    assert allocate_neurons(500, 5, 1.2, "increasing") == [25, 50, 75, 100, 250]


@pytest.mark.parametrize("strategy", ["decreasing", "uniform", "increasing"])
def test_allocation_single_layer(strategy) -> None:
    assert allocate_neurons(500, 1, 1.2, strategy) == [500]


@pytest.mark.parametrize(("n_total", "depth"), [(500, 2), (500, 3), (750, 4), (1000, 5), (300, 3)])
def test_allocation_budget_conservation(n_total: int, depth: int) -> None:
    strategies = ("decreasing", "uniform", "increasing")
    sums = {sum(allocate_neurons(n_total, depth, 1.2, s)) for s in strategies}
    assert len(sums) == 1
    total = sums.pop()
    assert abs(total - n_total) < 25 * depth
    for strategy in strategies:
        sizes = allocate_neurons(n_total, depth, 1.2, strategy)
        assert all(n >= 25 and n % 25 == 0 for n in sizes)


def test_allocation_budget_too_small() -> None:
    with pytest.raises(AllocationError):
        allocate_neurons(100, 5, 1.2, "decreasing")


def test_allocation_unknown_strategy() -> None:
    with pytest.raises(InvalidParameterError):
        allocate_neurons(500, 5, 1.2, "random")


# ==== TESTS CALENDRIER DE FUITE ==== #


def test_leakage_schedule_reference() -> None:
    schedule = leakage_schedule(0.95, 0.65, 5)
    assert schedule == pytest.approx([0.95, 0.875, 0.80, 0.725, 0.65], abs=1e-12)
    assert schedule[0] == 0.95
    assert schedule[-1] == 0.65
    assert all(a > b for a, b in zip(schedule, schedule[1:]))


def test_leakage_schedule_constant() -> None:
    assert leakage_schedule(0.65, 0.65, 4) == [0.65] * 4


def test_leakage_schedule_single_layer() -> None:
    assert leakage_schedule(0.95, 0.65, 1) == [0.95]


def test_bias_profiles() -> None:
    assert bias_profile("mild-increasing", 5) == pytest.approx([0.10, 0.15, 0.20, 0.25, 0.30])
    assert bias_profile("uniform", 3) == [0.10] * 3


def test_layer_config_validation() -> None:
    with pytest.raises(InvalidParameterError):
        LayerConfig(n_neurons=30, alpha=0.5, bias_fraction=0.1, bias_seed=0)
    with pytest.raises(InvalidParameterError):
        LayerConfig(n_neurons=25, alpha=0.0, bias_fraction=0.1, bias_seed=0)


def test_layer_widths_chain() -> None:
    deep = DeepConfig(depth=5, total_neurons=500, n_bin=10)
    layers = build_layer_configs(deep, bias_seed=0)
    assert sum(layer.n_neurons for layer in layers) == 500
    assert input_widths(layers, 25, 10) == [250, 2500, 1000, 750, 500]


# ==== TESTS DYNAMIQUE ==== #


def test_state_stays_coherent_and_bounded() -> None:
    reservoir = make_reservoir()
    state = reservoir.reset()
    for frame in random_frames((6, N_FEATURES)):
        previous = [dequantize8(r) for r in state.levels]
        reservoir.step_deep(frame, state)
        assert state.is_coherent(reservoir.codec)
        for layer, before, after in zip(reservoir.layers, previous, state.levels):
            value = dequantize8(after)
            assert np.all((value >= 0.0) & (value <= 1.0))
            bound = (1 - layer.alpha) * before + layer.alpha + QUANT_SLACK
            assert np.all(value <= bound + 1e-12)
    assert state.time_index == 6


def test_alpha_one_has_no_memory() -> None:
    reservoir = make_reservoir(depth=1, total_neurons=25, alpha_first=1.0, alpha_last=1.0)
    state = reservoir.reset()
    reservoir.step_deep(random_frames((N_FEATURES,), seed=1), state)
    u_bits = encode_vector(random_frames((N_FEATURES,), seed=2), reservoir.codec)
    optics = reservoir.optics[0]
    expected = detect(
        propagate(optics.assemble(u_bits, state.bits[0]), reservoir.model, optics), optics.scale
    )
    r_new, _ = reservoir.step_layer(0, u_bits, state)
    assert np.array_equal(r_new, expected)


def test_tiny_alpha_keeps_zero_state() -> None:
    reservoir = make_reservoir(alpha_first=0.001, alpha_last=0.001)
    state = reservoir.reset()
    for frame in random_frames((4, N_FEATURES)):
        reservoir.step_deep(frame, state)
    assert all(np.all(r == 0) for r in state.levels)


def test_step_layer_matches_hand_trace() -> None:
    reservoir = make_reservoir(depth=1, total_neurons=25, alpha_first=0.7, alpha_last=0.7)
    state = reservoir.reset()
    reservoir.step_deep(random_frames((N_FEATURES,), seed=3), state)
    r_prev = state.levels[0].copy()
    frame = random_frames((N_FEATURES,), seed=4)

    # Trace indépendante : champ complexe, module au carré, caméra, mélange, 8 bits
    optics = reservoir.optics[0]
    codec = reservoir.codec
    u_bits = encode_vector(frame, codec)
    pattern = np.concatenate([u_bits, codec.encode_levels(r_prev), optics.bias_pattern])
    pf = pattern.astype(np.float64)
    re = pf @ reservoir.model.real[:25, : pattern.size].T
    im = pf @ reservoir.model.imag[:25, : pattern.size].T
    intensity = re**2 + im**2
    v = np.floor(np.clip(intensity / optics.scale, 0.0, 1.0) * 255 + 0.5)
    mixed = (1.0 - 0.7) * (r_prev / 255) + 0.7 * (v / 255)
    expected = np.floor(np.clip(mixed, 0.0, 1.0) * 255 + 0.5).astype(np.uint8)

    reservoir.step_deep(frame, state)
    assert np.array_equal(state.levels[0], expected)


def test_depth_one_step_deep_equals_step_layer() -> None:
    reservoir = make_reservoir(depth=1, total_neurons=25)
    frame = random_frames((N_FEATURES,), seed=5)
    by_deep = reservoir.step_deep(frame, reservoir.reset())
    by_layer = reservoir.reset()
    reservoir.step_layer(0, encode_vector(frame, reservoir.codec), by_layer)
    assert np.array_equal(by_deep.levels[0], by_layer.levels[0])


def test_layer_reads_previous_layer_at_same_step() -> None:
    reservoir = make_reservoir(depth=3, total_neurons=75)
    seen: dict[int, np.ndarray] = {}
    reservoir.probe = lambda index, bits: seen.__setitem__(index, np.array(bits, copy=True))
    state = reservoir.reset()
    frames = random_frames((3, N_FEATURES), seed=6)
    reservoir.step_deep(frames[0], state)
    before = [x.copy() for x in state.bits]
    reservoir.step_deep(frames[1], state)
    for index in (1, 2):
        assert np.array_equal(seen[index], state.bits[index - 1])
        assert not np.array_equal(seen[index], before[index - 1])


def test_reservoir_is_deterministic() -> None:
    frames = random_frames((4, 5, N_FEATURES), seed=7)
    first = make_reservoir().run_batch(frames, "concat")
    second = make_reservoir().run_batch(frames, "concat")
    assert np.array_equal(first, second)


def test_layout_widths_match_encoded_patterns() -> None:
    reservoir = make_reservoir(depth=3, total_neurons=75)
    codec = reservoir.codec
    first = reservoir.optics[0]
    assert len(first.input_cols) == encode_vector(np.zeros(N_FEATURES), codec).shape[-1]
    for layer, optics in zip(reservoir.layers, reservoir.optics, strict=True):
        assert len(optics.state_cols) == encode_vector(np.zeros(layer.n_neurons), codec).shape[-1]


def test_reservoir_from_regenerated_matrix() -> None:
    reference = make_reservoir()
    again = build_reservoir(
        small_deep(),
        N_FEATURES,
        optics_seed=11,
        bias_seed=22,
        optics_config=OPTICS,
        model=transmission_from_metadata(reference.model.metadata()),
    )
    frames = random_frames((3, 4, N_FEATURES), seed=9)
    assert [o.scale for o in again.optics] == [o.scale for o in reference.optics]
    assert np.array_equal(again.run_batch(frames, "final"), reference.run_batch(frames, "final"))


def test_reservoir_rejects_foreign_matrix() -> None:
    foreign = make_reservoir().model
    with pytest.raises(ShapeError):
        build_reservoir(
            small_deep(),
            N_FEATURES,
            optics_seed=12,
            bias_seed=22,
            optics_config=OPTICS,
            model=foreign,
        )


def test_batch_rows_are_independent() -> None:
    reservoir = make_reservoir()
    frames = random_frames((3, 4, N_FEATURES), seed=8)
    batch = reservoir.run_batch(frames, "final")
    alone = reservoir.run_sequence(frames[1], "final")
    assert np.array_equal(batch[1], alone)


def test_step_deep_rejects_wrong_frame_width() -> None:
    reservoir = make_reservoir()
    with pytest.raises(ShapeError):
        reservoir.step_deep(np.zeros(N_FEATURES + 1), reservoir.reset())


# ==== TESTS AGRÉGATION ==== #


def test_aggregation_widths() -> None:
    reservoir = make_reservoir()
    frames = random_frames((2, 4, N_FEATURES), seed=9)
    assert reservoir.run_batch(frames, "final").shape == (2, 50)
    assert reservoir.run_batch(frames, "mean").shape == (2, 50)
    # Mode MNIST : quatre segments concaténés
    assert reservoir.run_batch(frames, "concat").shape == (2, 4 * 50)
    assert reservoir.feature_width(4, "concat") == 200
    assert reservoir.run_batch(frames, "concat", washout=1).shape == (2, 3 * 50)


def test_single_step_final_equals_mean() -> None:
    reservoir = make_reservoir()
    frames = random_frames((1, N_FEATURES), seed=10)
    assert np.array_equal(
        reservoir.run_sequence(frames, "final"), reservoir.run_sequence(frames, "mean")
    )


def test_empty_sequence_rejected() -> None:
    reservoir = make_reservoir()
    with pytest.raises(InvalidInputError):
        reservoir.run_sequence(np.zeros((0, N_FEATURES)))


def test_washout_covering_sequence_rejected() -> None:
    reservoir = make_reservoir()
    with pytest.raises(InvalidInputError):
        reservoir.run_batch(random_frames((1, 3, N_FEATURES)), "mean", washout=3)


def test_reference_allocation_readout_width() -> None:
    deep = DeepConfig(depth=5, total_neurons=500)
    assert sum(layer.n_neurons for layer in build_layer_configs(deep, 0)) == 500


# ==== TESTS TRAJECTOIRE ==== #


def test_trajectory_dump(tmp_path: Path) -> None:
    reservoir = make_reservoir()
    recorder = TrajectoryRecorder(row=0)
    reservoir.run_batch(random_frames((2, 3, N_FEATURES), seed=12), on_step=recorder)
    path = recorder.write_csv(tmp_path / "traj" / "trajectory.csv")
    frame = pd.read_csv(path)
    assert list(frame.columns) == ["step", "layer", "neuron", "level"]
    assert len(frame) == 3 * 50
    assert frame["level"].between(0, 255).all()
