# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : reservoir/layers.py

Description :
Configuration figée d'une couche (n_l, alpha^(l), b^(l), graine du biais) et
dérivation de la liste des couches depuis la configuration profonde.

Utilisé par :
    reservoir/deep_reservoir.py
    experiment/engine.py

Auteur : Équipe photonic-rc
"""

from dataclasses import dataclass

from photonic_rc.config.models import DeepConfig
from photonic_rc.models.errors import InvalidParameterError
from photonic_rc.reservoir.allocation import (
    NEURON_QUANTUM,
    allocate_neurons,
    bias_profile,
    leakage_schedule,
)


@dataclass(frozen=True, slots=True)
class LayerConfig:
    """Paramètres d'une couche du réservoir."""

    n_neurons: int
    alpha: float
    bias_fraction: float
    bias_seed: int

    def __post_init__(self) -> None:
        if self.n_neurons < NEURON_QUANTUM or self.n_neurons % NEURON_QUANTUM:
            raise InvalidParameterError(
                f"n_neurons={self.n_neurons} doit être un multiple de {NEURON_QUANTUM} non nul"
            )
        if not 0.0 < self.alpha <= 1.0:
            raise InvalidParameterError(f"alpha={self.alpha} hors de ]0, 1]")
        if not 0.0 <= self.bias_fraction <= 1.0:
            raise InvalidParameterError(f"bias_fraction={self.bias_fraction} hors de [0, 1]")


def build_layer_configs(deep: DeepConfig, bias_seed: int) -> list[LayerConfig]:
    """
    Dérive les L couches : allocation des neurones, calendrier de fuite, profil de biais.

    Args:
      deep: DeepConfig
      bias_seed: int: graine commune des motifs de biais (flux par couche)

    Returns:
      list[LayerConfig]
    """
    sizes = allocate_neurons(deep.budget, deep.depth, deep.gamma, deep.allocation)
    alphas = leakage_schedule(deep.alpha_first, deep.alpha_last, deep.depth)
    biases = bias_profile(deep.bias_profile, deep.depth, deep.bias_base, deep.bias_increment)
    return [
        LayerConfig(n_neurons=n, alpha=a, bias_fraction=b, bias_seed=bias_seed)
        for n, a, b in zip(sizes, alphas, biases, strict=True)
    ]


def input_widths(layers: list[LayerConfig], n_features: int, n_bin: int) -> list[int]:
    """Largeur de la région d'entrée : d * n_bin (couche 1), puis n_(l-1) * n_bin."""
    widths = [n_features * n_bin]
    widths.extend(layer.n_neurons * n_bin for layer in layers[:-1])
    return widths
