from pathlib import Path

import numpy as np
import pytest

from photonic_rc.features.dataset_format import read_sequence_dataset, write_sequence_dataset
from photonic_rc.features.hog import BLOCK_EPSILON, HogParams, cell_histograms, hog, hog_batch
from photonic_rc.features.pca import pca_fit, pca_inverse, pca_transform
from photonic_rc.features.sequences import (
    MinMaxBounds,
    MnistSequencer,
    SequencePreprocessor,
    SequenceSample,
    mnist_sequence,
    normalize_sequence,
    split_into_segments,
)
from photonic_rc.models.errors import (
    FormatError,
    InvalidInputError,
    InvalidParameterError,
    NotFittedError,
    ShapeError,
)

TI46_CHANNELS = 86
TI46_STEPS = 130


def random_images(n: int, seed: int = 0) -> np.ndarray:
    return np.random.default_rng(seed).uniform(0.0, 1.0, size=(n, 28, 28))


def sample(frames: np.ndarray, label: int = 0, source_id: str = "s") -> SequenceSample:
    frames = np.asarray(frames, dtype=np.float64)
    return SequenceSample(frames=frames, label=label, source_id=source_id)


# ==== TESTS HOG ==== #


def test_hog_constant_image_is_zero() -> None:
    assert np.all(hog(np.zeros((28, 28))) == 0.0)
    # Bords à zéro : seules les cellules intérieures d'une image constante sont muettes
    cells = cell_histograms(np.full((28, 28), 0.7), HogParams())[0]
    assert np.all(cells[1:3, 1:3] == 0.0)


def test_hog_descriptor_length() -> None:
    assert hog(random_images(1)[0]).shape == (144,)
    assert HogParams().descriptor_length(28, 7) == 36


def test_hog_vertical_step_votes_horizontal_gradient_bin() -> None:
    image = np.zeros((28, 28))
    image[:, 14:] = 1.0
    cells = cell_histograms(image, HogParams())[0]
    # Cellule intérieure (lignes 7..13, colonnes 7..13) : le bord est en colonne 13
    interior = cells[1, 1]
    assert interior[0] > 0.0
    assert np.all(interior[1:] == 0.0)


def test_hog_blocks_are_normalized() -> None:
    descriptors = hog_batch(random_images(5, seed=1), HogParams(block_size=2))
    assert np.all(descriptors >= 0.0)
    blocks = descriptors.reshape(5, -1, 4 * 9)
    assert np.all(np.linalg.norm(blocks, axis=2) <= 1.0 + BLOCK_EPSILON)


def test_hog_rejects_incompatible_dims() -> None:
    with pytest.raises(ShapeError):
        hog(np.zeros((27, 28)))
    with pytest.raises(ShapeError):
        hog(np.zeros((7, 7)), HogParams(block_size=2))


# ==== TESTS PCA ==== #


def test_pca_line_data() -> None:
    t = np.linspace(-3.0, 3.0, 50)[:, None]
    x = t * np.array([[1.0, -2.0, 0.5]]) + np.array([[0.3, 0.1, -0.2]])
    model = pca_fit(x, 1)
    error = np.max(np.abs(pca_inverse(model, pca_transform(model, x)) - x))
    assert error <= 1e-10


def test_pca_full_basis() -> None:
    x = np.random.default_rng(2).normal(size=(40, 6))
    model = pca_fit(x, 6)
    assert np.max(np.abs(pca_inverse(model, pca_transform(model, x)) - x)) <= 1e-8


def test_pca_explained_variance_oracle() -> None:
    x = np.random.default_rng(3).normal(size=(100, 10))
    model = pca_fit(x, 3)
    oracle = np.sort(np.linalg.eigvalsh(np.cov(x, rowvar=False)))[::-1][:3]
    assert np.allclose(model.explained_variance, oracle, atol=1e-8)


def test_pca_components_orthonormal_with_sign_rule() -> None:
    x = np.random.default_rng(4).normal(size=(60, 8))
    model = pca_fit(x, 5)
    assert np.max(np.abs(model.components @ model.components.T - np.eye(5))) <= 1e-8
    pivots = np.argmax(np.abs(model.components), axis=1)
    assert np.all(model.components[np.arange(5), pivots] > 0.0)


def test_pca_reconstruction_error_decreases_with_k() -> None:
    x = np.random.default_rng(5).normal(size=(80, 7))
    errors = []
    for k in range(1, 8):
        model = pca_fit(x, k)
        errors.append(float(np.sum((pca_inverse(model, pca_transform(model, x)) - x) ** 2)))
    assert all(a >= b - 1e-9 for a, b in zip(errors, errors[1:]))


def test_pca_k_too_large() -> None:
    with pytest.raises(InvalidParameterError):
        pca_fit(np.ones((5, 3)), 4)


# ==== TESTS SÉQUENCES MNIST ==== #


def test_mnist_sequencer_shapes_and_range() -> None:
    sequencer = MnistSequencer().fit(random_images(30))
    frames = sequencer.transform(random_images(6, seed=9))
    assert frames.shape == (6, 4, 25)
    assert np.all((frames >= 0.0) & (frames <= 1.0))


def test_mnist_sequencer_per_position() -> None:
    sequencer = MnistSequencer(n_components=5, per_position=True).fit(random_images(30))
    assert len(sequencer.pcas) == 4
    assert sequencer.transform(random_images(2, seed=1)).shape == (2, 4, 5)


def test_mnist_blank_image_gives_identical_frames() -> None:
    sequencer = MnistSequencer().fit(random_images(30))
    seq = mnist_sequence(np.zeros((28, 28)), sequencer, label=3, source_id="blank")
    assert seq.frames.shape == (4, 25)
    assert np.all(seq.frames == seq.frames[0])
    assert seq.label == 3


def test_mnist_sequencer_requires_fit() -> None:
    with pytest.raises(NotFittedError):
        MnistSequencer().transform(random_images(1))


# ==== TESTS NORMALISATION ==== #


def test_ti46_normalization_pads_to_fixed_length() -> None:
    rng = np.random.default_rng(6)
    train = [sample(rng.uniform(size=(100, TI46_CHANNELS)))]
    bounds = MinMaxBounds.fit_samples(train)
    out = normalize_sequence(train[0], bounds, "ti46")
    assert out.frames.shape == (TI46_STEPS, TI46_CHANNELS)
    assert np.all(out.frames[100:] == 0.0)


def test_ti46_wrong_channel_count() -> None:
    bad = sample(np.ones((10, 80)))
    with pytest.raises(FormatError):
        normalize_sequence(bad, MinMaxBounds.fit(bad.frames), "ti46")


def test_ti46_too_long() -> None:
    long = sample(np.ones((TI46_STEPS + 1, TI46_CHANNELS)))
    with pytest.raises(FormatError):
        normalize_sequence(long, MinMaxBounds.fit(long.frames), "ti46")


def test_constant_feature_and_clipping() -> None:
    train = sample(np.array([[0.0, 2.0], [1.0, 2.0], [0.5, 2.0]]))
    bounds = MinMaxBounds.fit(train.frames)
    test = sample(np.array([[1.5, 7.0], [-1.0, 2.0]]))
    out = normalize_sequence(test, bounds)
    assert out.frames.tolist() == [[1.0, 0.0], [0.0, 0.0]]


def test_split_into_segments() -> None:
    parts = split_into_segments(sample(np.arange(20.0).reshape(10, 2)), 4)
    assert [p.length for p in parts] == [3, 3, 2, 2]
    assert [p.segment for p in parts] == [1, 2, 3, 4]
    with pytest.raises(InvalidInputError):
        split_into_segments(sample(np.ones((3, 2))), 4)


def test_sequence_preprocessor_with_pca() -> None:
    rng = np.random.default_rng(7)
    train = [sample(rng.uniform(size=(50, TI46_CHANNELS)), label=k % 2) for k in range(6)]
    prep = SequencePreprocessor(mode="ti46", n_components=5).fit(train)
    out = prep.transform(train[:2])
    assert out[0].frames.shape == (TI46_STEPS, 5)
    assert np.all((out[0].frames >= 0.0) & (out[0].frames <= 1.0))


def test_sequence_preprocessor_requires_fit() -> None:
    with pytest.raises(NotFittedError):
        SequencePreprocessor().transform([sample(np.ones((2, 2)))])


def test_empty_sequence_rejected() -> None:
    with pytest.raises(InvalidInputError):
        sample(np.zeros((0, 3)))


# ==== TESTS FORMAT DE JEU ==== #


def test_sequence_dataset_round_trip(tmp_path: Path) -> None:
    samples = [
        SequenceSample(np.arange(6.0).reshape(3, 2) / 8, label=1, source_id="a", split_group=0),
        SequenceSample(np.ones((2, 2)) / 4, label="yes", source_id="b", split_group=None),
    ]
    write_sequence_dataset(tmp_path, samples)
    loaded = read_sequence_dataset(tmp_path)
    assert [s.label for s in loaded] == [1, "yes"]
    assert [s.split_group for s in loaded] == [0, None]
    assert np.array_equal(loaded[0].frames, samples[0].frames)
    assert (tmp_path / "samples" / "000001.csv").is_file()


def test_sequence_dataset_with_segments(tmp_path: Path) -> None:
    samples = [SequenceSample(np.ones((2, 3)), label=0, source_id="v", segment=k) for k in (1, 2)]
    write_sequence_dataset(tmp_path, samples, with_segment=True)
    assert [s.segment for s in read_sequence_dataset(tmp_path)] == [1, 2]


def test_sequence_dataset_bad_header(tmp_path: Path) -> None:
    (tmp_path / "manifest.csv").write_text("file,label\nx.csv,0\n")
    with pytest.raises(FormatError):
        read_sequence_dataset(tmp_path)


def test_sequence_dataset_missing_manifest(tmp_path: Path) -> None:
    with pytest.raises(FormatError):
        read_sequence_dataset(tmp_path)
