# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : experiment/engine.py

Description :
Moteur d'expérience : charge le jeu de données, construit les découpages du
protocole, puis pour chaque répétition (graine optique seeds.optics + r) et chaque
fold :

    1. ajuste le prétraitement sur les indices d'entraînement SEULS ;
    2. construit et calibre le réservoir profond ;
    3. pilote le réservoir sur chaque séquence (par lots de même longueur) ;
    4. standardise, choisit lambda (k-fold interne), entraîne la ridge ;
    5. évalue sur le test (précision, matrice de confusion).

Une erreur de module interrompt le fold seulement : le FoldResult porte alors le
statut "failed" et le diagnostic. Les folds sont indépendants et peuvent tourner en
parallèle (joblib, threads) ; le rapport est assemblé par un seul écrivain, dans
l'ordre (répétition, fold).

Contrôle de fuite (protocol.leakage_check) : les lignes de test sont empoisonnées,
le prétraitement, la standardisation et lambda sont ré-ajustés, et toute
différence lève LeakageError.

Avec un dossier de sortie, chaque fold réussi laisse sa lecture
(readout_<r>_<fold>.txt) et les métadonnées de sa matrice
(transmission_<r>_<fold>.json) ; evaluate_saved_fold les relit.

Utilisé par :
    controller/execution.py
    orchestrator/sweep.py

Auteur : Équipe photonic-rc
"""

from collections.abc import Sequence
from dataclasses import dataclass, replace
import json
import logging
from pathlib import Path
import time
from typing import Literal, Protocol

from joblib import Parallel, delayed
import numpy as np
from numpy.typing import NDArray

from photonic_rc.config.loader import config_digest, resolve_data_path
from photonic_rc.config.models import Aggregation, ExperimentConfig
from photonic_rc.experiment.protocols import (
    FoldSplit,
    cv_kth_central,
    cv_mnist_7fold,
    cv_ti46_grouped,
    fixed_split,
    holdout_split,
)
from photonic_rc.experiment.report import FoldResult, RunReport, write_report
from photonic_rc.features.sequences import MnistSequencer, SequencePreprocessor, SequenceSample
from photonic_rc.models.errors import (
    ConfigError,
    FormatError,
    InvalidInputError,
    LeakageError,
    PhotonicRcError,
    ProtocolError,
)
from photonic_rc.optics.transmission import TransmissionModel, transmission_from_metadata
from photonic_rc.orchestrator.resource_manager import ResourceManager
from photonic_rc.providers.mnist_provider import MnistSplit, load_mnist
from photonic_rc.providers.sequence_provider import load_sequence_dataset
from photonic_rc.providers.synthetic_provider import synthetic_task
from photonic_rc.readout.metrics import ConfusionMatrix, score
from photonic_rc.readout.persistence import load_model, save_model
from photonic_rc.readout.ridge import DesignMatrix, Label, ReadoutModel, Standardizer, fit_readout
from photonic_rc.readout.selection import select_lambda
from photonic_rc.reservoir.deep_reservoir import (
    DeepReservoir,
    build_reservoir,
    matrix_shape,
)
from photonic_rc.reservoir.layers import build_layer_configs
from photonic_rc.tracking.run_journal import RunEvent, RunJournal
from photonic_rc.tracking.trajectory_logger import TrajectoryRecorder

logger = logging.getLogger(__name__)

POISON_SEED = 0xBAD
POISON_OFFSET = 1.0e3


@dataclass(frozen=True)
class LoadedData:
    """Jeu de données chargé et découpages du protocole."""

    labels: tuple[Label, ...]
    class_labels: tuple[Label, ...]
    folds: tuple[FoldSplit, ...]
    images: NDArray[np.float32] | None = None
    sequences: tuple[SequenceSample, ...] | None = None
    notes: tuple[str, ...] = ()

    @property
    def kind(self) -> Literal["images", "sequences"]:
        return "images" if self.images is not None else "sequences"

    def __len__(self) -> int:
        return len(self.labels)

    def poisoned(self, rows: NDArray[np.int64]) -> "LoadedData":
        """Copie dont les lignes 'rows' sont remplacées par des valeurs aberrantes."""
        rng = np.random.default_rng(POISON_SEED)
        if self.images is not None:
            images = self.images.copy()
            images[rows] = rng.uniform(0.0, 1.0, size=images[rows].shape).astype(np.float32)
            return replace(self, images=images)
        assert self.sequences is not None
        marked = set(int(r) for r in rows)
        seqs = tuple(
            s.with_frames(POISON_OFFSET + POISON_OFFSET * rng.standard_normal(s.frames.shape))
            if k in marked
            else s
            for k, s in enumerate(self.sequences)
        )
        return replace(self, sequences=seqs)


def _class_labels(labels: Sequence[Label]) -> tuple[Label, ...]:
    unique = set(labels)
    if all(isinstance(v, int) for v in unique):
        return tuple(sorted(unique, key=int))
    return tuple(sorted(unique, key=str))


def _subsample(split: MnistSplit, n: int | None, rng: np.random.Generator) -> MnistSplit:
    if n is None or n >= len(split):
        return split
    return split.subset(np.sort(rng.choice(len(split), size=n, replace=False)))


def _load_mnist(config: ExperimentConfig) -> LoadedData:
    ds, proto = config.dataset, config.protocol
    data = load_mnist(resolve_data_path(ds.path))
    notes: list[str] = []
    if proto.name == "mnist-7fold":
        if ds.train_subsample is not None or ds.test_subsample is not None:
            raise ConfigError(
                "Le protocole 7-fold MNIST utilise les 70000 images : pas de sous-échantillon"
            )
        pool = data.pooled()
        folds = cv_mnist_7fold(len(pool), config.seeds.shuffle)
    elif proto.name == "holdout":
        rng = np.random.default_rng(config.seeds.shuffle)
        train = _subsample(data.train, ds.train_subsample, rng)
        test = _subsample(data.test, ds.test_subsample, rng)
        if ds.train_subsample is not None or ds.test_subsample is not None:
            notes.append(
                f"MNIST échelle bureau : {len(train)} entraînement / {len(test)} test "
                "(sous-échantillon, hors échelle de référence)"
            )
        pool = MnistSplit(
            np.concatenate([train.images, test.images]),
            np.concatenate([train.labels, test.labels]),
        )
        folds = fixed_split(len(train), len(test))
    else:
        raise ProtocolError(f"Protocole {proto.name} incompatible avec MNIST")
    labels = tuple(int(v) for v in pool.labels)
    return LoadedData(
        labels=labels,
        class_labels=_class_labels(labels),
        folds=tuple(folds),
        images=pool.images,
        notes=tuple(notes),
    )


def _sequence_folds(config: ExperimentConfig, samples: Sequence[SequenceSample]) -> list[FoldSplit]:
    proto, seed = config.protocol, config.seeds.shuffle
    labels = [s.label for s in samples]
    if proto.name == "ti46-grouped-10fold":
        groups = [s.split_group for s in samples]
        given = None if None in groups else [int(g) for g in groups if g is not None]
        return cv_ti46_grouped(labels, seed, proto.n_folds, given)
    if proto.name == "kth-central-2fold":
        return cv_kth_central([s.segment for s in samples], [s.source_id for s in samples])
    if proto.name == "holdout":
        return holdout_split(len(samples), proto.holdout_fraction, seed, proto.train_equals_test)
    raise ProtocolError(f"Protocole {proto.name} incompatible avec un jeu séquentiel")


def load_data(config: ExperimentConfig) -> LoadedData:
    """Charge le jeu de données de la configuration et construit les folds."""
    ds = config.dataset
    if ds.kind == "mnist":
        return _load_mnist(config)
    if ds.kind == "synthetic":
        samples = synthetic_task(ds.synthetic.kind, ds.synthetic, config.seeds.dataset)
    else:
        samples = load_sequence_dataset(ds)
    labels = tuple(s.label for s in samples)
    return LoadedData(
        labels=labels,
        class_labels=_class_labels(labels),
        folds=tuple(_sequence_folds(config, samples)),
        sequences=tuple(samples),
    )


# ---------------- prétraitement ----------------


class Pipeline(Protocol):
    def fit(self, data: LoadedData, rows: NDArray[np.int64]) -> None: ...
    def transform(self, data: LoadedData, rows: NDArray[np.int64]) -> list[NDArray[np.float64]]: ...
    def parameters(self) -> dict[str, NDArray[np.float64]]: ...
    def explained_variance(self) -> float | None: ...
    def n_features(self) -> int: ...


@dataclass
class ImagePipeline:
    """Bandes MNIST → HOG → PCA → bornes."""

    sequencer: MnistSequencer

    def fit(self, data: LoadedData, rows: NDArray[np.int64]) -> None:
        assert data.images is not None
        self.sequencer.fit(data.images[rows])

    def transform(self, data: LoadedData, rows: NDArray[np.int64]) -> list[NDArray[np.float64]]:
        assert data.images is not None
        return list(self.sequencer.transform(data.images[rows]))

    def parameters(self) -> dict[str, NDArray[np.float64]]:
        params: dict[str, NDArray[np.float64]] = {}
        for k, pca in enumerate(self.sequencer.pcas):
            params[f"pca{k}.mean"] = pca.mean
            params[f"pca{k}.components"] = pca.components
        if self.sequencer.bounds is not None:
            params["bounds.low"] = self.sequencer.bounds.low
            params["bounds.high"] = self.sequencer.bounds.high
        return params

    def explained_variance(self) -> float | None:
        ratios = [float(p.explained_variance_ratio.sum()) for p in self.sequencer.pcas]
        return float(np.mean(ratios)) if ratios else None

    def n_features(self) -> int:
        return self.sequencer.n_components


@dataclass
class SequencePipeline:
    """PCA par trame optionnelle puis bornes min/max."""

    preprocessor: SequencePreprocessor

    def _samples(self, data: LoadedData, rows: NDArray[np.int64]) -> list[SequenceSample]:
        assert data.sequences is not None
        return [data.sequences[int(k)] for k in rows]

    def fit(self, data: LoadedData, rows: NDArray[np.int64]) -> None:
        self.preprocessor.fit(self._samples(data, rows))

    def transform(self, data: LoadedData, rows: NDArray[np.int64]) -> list[NDArray[np.float64]]:
        return [s.frames for s in self.preprocessor.transform(self._samples(data, rows))]

    def parameters(self) -> dict[str, NDArray[np.float64]]:
        params: dict[str, NDArray[np.float64]] = {}
        if self.preprocessor.pca is not None:
            params["pca.mean"] = self.preprocessor.pca.mean
            params["pca.components"] = self.preprocessor.pca.components
        if self.preprocessor.bounds is not None:
            params["bounds.low"] = self.preprocessor.bounds.low
            params["bounds.high"] = self.preprocessor.bounds.high
        return params

    def explained_variance(self) -> float | None:
        pca = self.preprocessor.pca
        return None if pca is None else float(pca.explained_variance_ratio.sum())

    def n_features(self) -> int:
        if self.preprocessor.pca is not None:
            return self.preprocessor.pca.k
        assert self.preprocessor.bounds is not None
        return int(self.preprocessor.bounds.low.shape[0])


def make_pipeline(config: ExperimentConfig, data: LoadedData) -> Pipeline:
    if data.kind == "images":
        return ImagePipeline(MnistSequencer.from_config(config.preprocessing))
    prep = SequencePreprocessor.from_config(config.preprocessing, config.dataset.mode)
    return SequencePipeline(prep)


# ---------------- réservoir et lecture ----------------


def drive(
    reservoir: DeepReservoir,
    sequences: Sequence[NDArray[np.float64]],
    aggregation: Aggregation,
    washout: int,
    batch_size: int,
) -> NDArray[np.float32]:
    """
    Vecteurs de lecture de toutes les séquences (une ligne par séquence, ordre conservé).

    Les séquences de même longueur sont traitées par lots de 'batch_size'.
    """
    if not sequences:
        raise InvalidInputError("Aucune séquence à traiter")
    lengths = np.array([s.shape[0] for s in sequences], dtype=np.int64)
    if aggregation == "concat" and np.unique(lengths).size > 1:
        raise InvalidInputError(
            "Agrégation 'concat' impossible sur des séquences de longueurs variées"
        )
    out: NDArray[np.float32] | None = None
    for length in np.unique(lengths):
        members = np.flatnonzero(lengths == length)
        for start in range(0, members.size, batch_size):
            chunk = members[start : start + batch_size]
            states = reservoir.run_batch(
                np.stack([sequences[int(k)] for k in chunk]), aggregation, washout
            )
            if out is None:
                out = np.empty((len(sequences), states.shape[1]), dtype=np.float32)
            out[chunk] = states
    assert out is not None
    return out


@dataclass(frozen=True)
class ReadoutFit:
    model: ReadoutModel
    lam: float
    standardizer: Standardizer | None


def train_readout(
    config: ExperimentConfig,
    states: NDArray[np.float32],
    labels: Sequence[Label],
    class_labels: Sequence[Label],
) -> ReadoutFit:
    """Standardisation (entraînement seul), sélection de lambda puis ridge."""
    ro = config.readout
    design = DesignMatrix.from_labels(states, labels, class_labels)
    standardizer = Standardizer.fit(design.states) if ro.standardize else None
    if ro.fixed_lambda is not None:
        lam = ro.fixed_lambda
    else:
        scaled = design
        if standardizer is not None:
            scaled = design.with_states(standardizer.transform(design.states))
        lam = select_lambda(scaled, ro.lambda_grid, ro.folds, config.seeds.shuffle)
    model = fit_readout(design, lam, ro.standardize)
    return ReadoutFit(model=model, lam=lam, standardizer=standardizer)


def _compare(name: str, a: NDArray[np.float64], b: NDArray[np.float64]) -> None:
    if a.shape != b.shape or not np.array_equal(a, b):
        raise LeakageError(f"Paramètre ajusté '{name}' modifié par l'empoisonnement du test")


def readout_path(output_dir: str | Path, repetition: int, fold: str) -> Path:
    return Path(output_dir) / f"readout_{repetition}_{fold}.txt"


def transmission_path(output_dir: str | Path, repetition: int, fold: str) -> Path:
    return Path(output_dir) / f"transmission_{repetition}_{fold}.json"


def save_fold_artifacts(
    output_dir: str | Path,
    repetition: int,
    fold: str,
    model: ReadoutModel,
    transmission: TransmissionModel,
) -> None:
    """Poids de lecture (hexadécimal exact) et métadonnées (seed, dimensions) de la matrice."""
    save_model(model, readout_path(output_dir, repetition, fold))
    meta = json.dumps(transmission.metadata(), indent=2, sort_keys=True)
    transmission_path(output_dir, repetition, fold).write_text(meta + "\n", encoding="utf-8")


def evaluate_saved_fold(
    config: ExperimentConfig,
    output_dir: str | Path,
    repetition: int,
    fold: str,
    data: LoadedData | None = None,
) -> tuple[float, ConfusionMatrix]:
    """
    Ré-évalue un fold à partir des artefacts d'un run, sans ré-entraîner la lecture.

    Le prétraitement est ré-ajusté sur l'entraînement du fold (déterministe), la
    matrice est régénérée depuis ses métadonnées et la lecture relue telle quelle.

    Args:
      config: ExperimentConfig: configuration du run d'origine
      output_dir: dossier du run
      repetition: int: indice de répétition
      fold: str: nom du fold
      data: LoadedData: jeu déjà chargé, sinon chargé depuis la configuration

    Returns:
      (précision, matrice de confusion) sur le test du fold
    """
    loaded = data if data is not None else load_data(config)
    split = next((f for f in loaded.folds if f.name == fold), None)
    if split is None:
        raise ProtocolError(f"Fold '{fold}' absent du protocole {config.protocol.name}")
    meta_path = transmission_path(output_dir, repetition, fold)
    try:
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise FormatError(f"Métadonnées de transmission absentes : {meta_path}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"Métadonnées de transmission illisibles : {meta_path}") from exc
    saved = readout_path(output_dir, repetition, fold)
    if not saved.is_file():
        raise FormatError(f"Lecture absente : {saved}")
    model = load_model(saved)

    pipeline = make_pipeline(config, loaded)
    pipeline.fit(loaded, split.train)
    reservoir = build_reservoir(
        config.reservoir,
        pipeline.n_features(),
        config.seeds.optics + repetition,
        config.seeds.bias,
        config.optics,
        model=transmission_from_metadata(meta, config.optics.max_matrix_elements),
    )
    deep = config.reservoir
    states = drive(
        reservoir,
        pipeline.transform(loaded, split.test),
        deep.aggregation,
        deep.washout,
        config.run.batch_size,
    )
    design = DesignMatrix.from_labels(
        states, [loaded.labels[int(k)] for k in split.test], loaded.class_labels
    )
    return score(model, design)


@dataclass
class FoldRunner:
    """Exécute un fold ; capture les erreurs de module en FoldResult 'failed'."""

    config: ExperimentConfig
    data: LoadedData
    trajectory_path: Path | None = None
    artifacts_dir: Path | None = None

    def _states(
        self, pipeline: Pipeline, reservoir: DeepReservoir, rows: NDArray[np.int64]
    ) -> NDArray[np.float32]:
        deep, run = self.config.reservoir, self.config.run
        return drive(
            reservoir,
            pipeline.transform(self.data, rows),
            deep.aggregation,
            deep.washout,
            run.batch_size,
        )

    def _leakage_check(
        self,
        fold: FoldSplit,
        pipeline: Pipeline,
        reservoir: DeepReservoir,
        fitted: ReadoutFit,
    ) -> None:
        poisoned = self.data.poisoned(fold.test)
        twin = make_pipeline(self.config, poisoned)
        twin.fit(poisoned, fold.train)
        reference = pipeline.parameters()
        for name, value in twin.parameters().items():
            _compare(name, reference[name], value)
        states = drive(
            reservoir,
            twin.transform(poisoned, fold.train),
            self.config.reservoir.aggregation,
            self.config.reservoir.washout,
            self.config.run.batch_size,
        )
        labels = [poisoned.labels[int(k)] for k in fold.train]
        refit = train_readout(self.config, states, labels, self.data.class_labels)
        if fitted.standardizer is not None and refit.standardizer is not None:
            _compare("standardizer.mean", fitted.standardizer.mean, refit.standardizer.mean)
            _compare("standardizer.scale", fitted.standardizer.scale, refit.standardizer.scale)
        if refit.lam != fitted.lam:
            raise LeakageError(f"lambda {fitted.lam} devenu {refit.lam} après empoisonnement")
        logger.info("Fold %s : contrôle de fuite réussi", fold.name)

    def _dump_trajectory(self, reservoir: DeepReservoir, frames: NDArray[np.float64]) -> None:
        assert self.trajectory_path is not None
        recorder = TrajectoryRecorder()
        deep = self.config.reservoir
        reservoir.run_sequence(frames, deep.aggregation, deep.washout, recorder)
        recorder.write_csv(self.trajectory_path)

    def run(self, repetition: int, fold: FoldSplit) -> FoldResult:
        optics_seed = self.config.seeds.optics + repetition
        started = time.perf_counter()
        try:
            pipeline = make_pipeline(self.config, self.data)
            pipeline.fit(self.data, fold.train)
            reservoir = build_reservoir(
                self.config.reservoir,
                pipeline.n_features(),
                optics_seed,
                self.config.seeds.bias,
                self.config.optics,
            )
            train_states = self._states(pipeline, reservoir, fold.train)
            train_labels = [self.data.labels[int(k)] for k in fold.train]
            fitted = train_readout(self.config, train_states, train_labels, self.data.class_labels)

            test_frames = pipeline.transform(self.data, fold.test)
            deep = self.config.reservoir
            test_states = drive(
                reservoir, test_frames, deep.aggregation, deep.washout, self.config.run.batch_size
            )
            test_design = DesignMatrix.from_labels(
                test_states, [self.data.labels[int(k)] for k in fold.test], self.data.class_labels
            )
            accuracy, confusion = score(fitted.model, test_design)
            if self.config.protocol.leakage_check and not fold.shared:
                self._leakage_check(fold, pipeline, reservoir, fitted)
            if self.trajectory_path is not None:
                self._dump_trajectory(reservoir, test_frames[0])
        except PhotonicRcError as exc:
            logger.error("Fold %s (répétition %s) en échec : %s", fold.name, repetition, exc)
            return FoldResult(
                repetition=repetition,
                fold=fold.name,
                optics_seed=optics_seed,
                status="failed",
                n_train=int(fold.train.size),
                n_test=int(fold.test.size),
                error=f"{type(exc).__name__}: {exc}",
                elapsed=time.perf_counter() - started,
            )

        logger.info(
            "Fold %s (répétition %s) : précision %.4f, lambda %.3g",
            fold.name,
            repetition,
            accuracy,
            fitted.lam,
        )
        if self.artifacts_dir is not None:
            save_fold_artifacts(
                self.artifacts_dir, repetition, fold.name, fitted.model, reservoir.model
            )
        return FoldResult(
            repetition=repetition,
            fold=fold.name,
            optics_seed=optics_seed,
            status="ok",
            accuracy=accuracy,
            lam=fitted.lam,
            confusion=confusion,
            n_train=int(fold.train.size),
            n_test=int(fold.test.size),
            readout_dim=int(train_states.shape[1]),
            explained_variance=pipeline.explained_variance(),
            elapsed=time.perf_counter() - started,
        )


def _notes(config: ExperimentConfig, data: LoadedData) -> tuple[str, ...]:
    notes = list(data.notes)
    deep = config.reservoir
    if deep.depth > 1 and deep.budget_rule == "fixed":
        notes.append(
            f"Répartition de N={deep.budget} sur {deep.depth} couches : stratégie "
            f"'{deep.allocation}' (gamma={deep.gamma}) supposée, non imposée par les données"
        )
    return tuple(notes)


def run_experiment(
    config: ExperimentConfig,
    output_dir: str | Path | None = None,
    data: LoadedData | None = None,
    journal: RunJournal | None = None,
    resources: ResourceManager | None = None,
    cell: str | None = None,
) -> RunReport:
    """
    Exécute toutes les répétitions et tous les folds d'une configuration.

    Args:
      config: ExperimentConfig
      output_dir: dossier des artefacts (None : rien n'est écrit)
      data: LoadedData: jeu déjà chargé (balayages), sinon chargé depuis la configuration
      journal: RunJournal: journal d'évènements optionnel
      resources: ResourceManager: plafonds de parallélisme et de mémoire
      cell: str: nom de cellule de balayage (table longue)

    Returns:
      RunReport
    """
    loaded = data if data is not None else load_data(config)
    manager = resources or ResourceManager(max_matrix_elements=config.optics.max_matrix_elements)
    if loaded.kind == "images":
        shape = matrix_shape(config.reservoir, config.preprocessing.pca_components)
        manager.check_transmission(*shape)

    out = Path(output_dir) if output_dir is not None else None
    jobs = [(r, fold) for r in range(config.run.repetitions) for fold in loaded.folds]
    trajectory = None
    if out is not None and config.output.dump_trajectory:
        trajectory = out / "trajectory.csv"
    runners = [
        FoldRunner(config, loaded, trajectory if k == 0 else None, out)
        for k in range(len(jobs))
    ]
    n_workers = manager.workers(config.run.n_jobs, len(jobs))
    logger.info(
        "Run %s : %s folds x %s répétitions, %s travailleur(s)",
        cell or config.output.name,
        len(loaded.folds),
        config.run.repetitions,
        n_workers,
    )
    results: list[FoldResult] = Parallel(n_jobs=n_workers, prefer="threads")(
        delayed(runner.run)(r, fold) for runner, (r, fold) in zip(runners, jobs, strict=True)
    )

    layers = build_layer_summary(config)
    report = RunReport(
        name=cell or config.output.name,
        config_digest=config_digest(config),
        folds=tuple(results),
        class_labels=loaded.class_labels,
        layer_sizes=layers[0],
        alphas=layers[1],
        bias_fractions=layers[2],
        notes=_notes(config, loaded),
    )
    if journal is not None:
        for res in results:
            journal.log_event(
                RunEvent(
                    kind="fold",
                    name=f"{report.name}/{res.repetition}/{res.fold}",
                    status=res.status,
                    meta={"accuracy": res.accuracy, "lambda": res.lam, "error": res.error},
                )
            )
    if out is not None:
        write_report(report, out)
        for res in results:
            if res.confusion is not None:
                res.confusion.write_csv(out / f"confusion_{res.repetition}_{res.fold}.csv")
    if report.mean_accuracy is not None:
        logger.info(
            "Run %s : précision %.4f ± %.4f (%s échec(s))",
            report.name,
            report.mean_accuracy,
            report.std_accuracy,
            len(report.failed),
        )
    return report


def build_layer_summary(
    config: ExperimentConfig,
) -> tuple[tuple[int, ...], tuple[float, ...], tuple[float, ...]]:
    """(n_l, alpha_l, b_l) de la configuration, ou vides si l'allocation échoue."""
    try:
        layers = build_layer_configs(config.reservoir, config.seeds.bias)
    except PhotonicRcError:
        return (), (), ()
    return (
        tuple(c.n_neurons for c in layers),
        tuple(c.alpha for c in layers),
        tuple(c.bias_fraction for c in layers),
    )

