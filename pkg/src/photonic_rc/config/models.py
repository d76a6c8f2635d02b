# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : config/models.py

Description :
Définit les modèles de configuration d'une expérience : jeu de données,
prétraitement, architecture du réservoir profond, optique, lecture, protocole
de validation croisée, graines, sorties et journalisation.

Chaque tirage aléatoire d'un run remonte à exactement un champ de 'SeedsConfig' :
  - optics  : matrice de transmission et motifs de calibration (seed + répétition)
  - bias    : motifs de biais des couches
  - shuffle : partitions de validation croisée, sous-échantillonnage, k-fold de lambda
  - dataset : génération des tâches synthétiques

Utilisé par :
    config/loader.py
    experiment/engine.py
    orchestrator/sweep.py

Auteur : Équipe photonic-rc
"""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

AllocationStrategy = Literal["decreasing", "uniform", "increasing"]
BiasProfile = Literal["uniform", "mild-increasing"]
Aggregation = Literal["final", "mean", "concat"]
DatasetKind = Literal["mnist", "sequence-dir", "synthetic"]
SequenceMode = Literal["generic", "ti46", "kth"]
SyntheticKind = Literal["delayed-recall", "noisy-channel-classification"]
CvProtocol = Literal["mnist-7fold", "ti46-grouped-10fold", "kth-central-2fold", "holdout"]
BudgetRule = Literal["fixed", "per-layer"]


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class SyntheticConfig(_Section):
    """Paramètres des tâches synthétiques (substitut de bureau aux corpus audio/vidéo)."""

    kind: SyntheticKind = "delayed-recall"
    n_classes: int = Field(default=4, ge=2)
    n_per_class: int = Field(default=50, ge=1)
    length: int = Field(default=12, ge=1)
    n_features: int = Field(default=8, ge=1)
    delay: int = Field(default=3, ge=0)
    noise: float = Field(default=0.1, ge=0.0)

    @model_validator(mode="after")
    def _delay_fits(self) -> "SyntheticConfig":
        if self.delay >= self.length:
            raise ValueError(f"delay ({self.delay}) doit être < length ({self.length})")
        return self


class DatasetConfig(_Section):
    kind: DatasetKind = "synthetic"
    path: str | None = None  # relatif à PHOTONIC_RC_DATA_ROOT si non absolu
    mode: SequenceMode = "generic"
    train_subsample: int | None = Field(default=None, ge=1)  # MNIST bureau : 10000
    test_subsample: int | None = Field(default=None, ge=1)  # MNIST bureau : 2000
    synthetic: SyntheticConfig = SyntheticConfig()


class PreprocessingConfig(_Section):
    hog_cell_size: int = Field(default=7, ge=1)
    hog_block_size: int = Field(default=1, ge=1)
    hog_orientations: int = Field(default=9, ge=1)
    hog_signed: bool = False
    pca_components: int = Field(default=25, ge=1)
    pca_per_position: bool = False
    sequence_pca_components: int | None = Field(default=None, ge=1)  # KTH : 1000
    ti46_channels: int = Field(default=86, ge=1)
    ti46_steps: int = Field(default=130, ge=1)


class DeepConfig(_Section):
    """Architecture du réservoir profond (profondeur, budget, allocation, fuite, biais)."""

    depth: int = Field(default=3, ge=1)
    total_neurons: int = Field(default=300, ge=25)
    budget_rule: BudgetRule = "fixed"
    neurons_per_layer: int = Field(default=100, ge=25)  # règle N = 100 x L
    allocation: AllocationStrategy = "decreasing"
    gamma: float = Field(default=1.2, gt=0.0)
    alpha_first: float = Field(default=0.95, gt=0.0, le=1.0)
    alpha_last: float = Field(default=0.65, gt=0.0, le=1.0)
    bias_profile: BiasProfile = "mild-increasing"
    bias_base: float = Field(default=0.10, ge=0.0, le=1.0)
    bias_increment: float = Field(default=0.05, ge=0.0, le=1.0)
    bias_width: int = Field(default=200, ge=0)
    n_bin: int = Field(default=10, ge=2)
    aggregation: Aggregation = "final"
    washout: int = Field(default=0, ge=0)

    @property
    def budget(self) -> int:
        """Budget total effectif selon la règle choisie."""
        if self.budget_rule == "per-layer":
            return self.neurons_per_layer * self.depth
        return self.total_neurons


class OpticsConfig(_Section):
    calibration_percentile: float = Field(default=99.0, gt=50.0, le=100.0)
    warmup_patterns: int = Field(default=64, ge=32)
    max_matrix_elements: int = Field(default=50_000_000, ge=1)


class ReadoutConfig(_Section):
    lambda_grid: list[float] = Field(
        default_factory=lambda: [10.0**e for e in range(-6, 7)]  # 13 points, 1e-6 … 1e6
    )
    folds: int = Field(default=3, ge=2)
    standardize: bool = True
    fixed_lambda: float | None = Field(default=None, ge=0.0)

    @field_validator("lambda_grid")
    @classmethod
    def _grid_valid(cls, grid: list[float]) -> list[float]:
        if not grid:
            raise ValueError("lambda_grid vide")
        if any(v <= 0.0 for v in grid):
            raise ValueError("lambda_grid doit être strictement positive")
        if any(b <= a for a, b in zip(grid, grid[1:], strict=False)):
            raise ValueError("lambda_grid doit être strictement croissante")
        return grid


class ProtocolConfig(_Section):
    name: CvProtocol = "holdout"
    holdout_fraction: float = Field(default=0.25, gt=0.0, lt=1.0)
    n_folds: int = Field(default=10, ge=2)  # protocole TI-46 groupé
    leakage_check: bool = False
    train_equals_test: bool = False  # holdout : contrôle de sur-apprentissage


class SeedsConfig(_Section):
    optics: int = 1
    bias: int = 2
    shuffle: int = 3
    dataset: int = 4


class RunConfig(_Section):
    repetitions: int = Field(default=1, ge=1)
    n_jobs: int = 1
    batch_size: int = Field(default=256, ge=1)


class OutputConfig(_Section):
    dir: str = "results"
    name: str = "run"
    dump_trajectory: bool = False


class LoggingConfig(_Section):
    level: str = "INFO"
    dir: str | None = None
    filename: str = "photonic_rc.log"


class ExperimentConfig(_Section):
    """Description déclarative complète d'un run."""

    dataset: DatasetConfig = DatasetConfig()
    preprocessing: PreprocessingConfig = PreprocessingConfig()
    reservoir: DeepConfig = DeepConfig()
    optics: OpticsConfig = OpticsConfig()
    readout: ReadoutConfig = ReadoutConfig()
    protocol: ProtocolConfig = ProtocolConfig()
    seeds: SeedsConfig = SeedsConfig()
    run: RunConfig = RunConfig()
    output: OutputConfig = OutputConfig()
    logging: LoggingConfig = LoggingConfig()
