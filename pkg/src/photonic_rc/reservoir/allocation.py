# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : reservoir/allocation.py

Description :
Répartition des neurones, des taux de fuite et des fractions de biais entre les
couches du réservoir profond.

  - allocate_neurons : loi de puissance normalisée phi(l) = l^-gamma, arrondi au
    multiple de 25 le plus proche, puis correction globale appliquée à la couche 1 ;
  - leakage_schedule : interpolation linéaire de alpha de la couche 1 à la couche L ;
  - bias_profile : fraction de pixels ON fixes par couche.

Utilisé par :
    reservoir/layers.py
    orchestrator/sweep.py

Auteur : Équipe photonic-rc
"""

from fractions import Fraction
import logging
import math
from typing import Final

from photonic_rc.config.models import AllocationStrategy, BiasProfile
from photonic_rc.models.errors import AllocationError, InvalidParameterError

logger = logging.getLogger(__name__)

NEURON_QUANTUM: Final[int] = 25


def _round_quantum(value: float) -> int:
    """25 * floor(value / 25 + 1/2)."""
    return NEURON_QUANTUM * math.floor(value / NEURON_QUANTUM + 0.5)


def _corrected(n_total: int, allocation: list[int]) -> list[int]:
    """Applique la correction globale Delta N à la première couche."""
    delta = n_total - sum(allocation)
    corrected = list(allocation)
    corrected[0] += _round_quantum(delta)
    return corrected


def allocate_neurons(
    n_total: int, depth: int, gamma: float = 1.2, strategy: AllocationStrategy = "decreasing"
) -> list[int]:
    """
    Répartit un budget de neurones sur les couches.

    Args:
      n_total: int: budget N (>= 25 * L)
      depth: int: nombre de couches L (>= 1)
      gamma: float: exposant de décroissance
      strategy: "decreasing" | "uniform" | "increasing"

    Returns:
      list[int] : n_l, multiples de 25, chacun >= 25
    """
    if depth < 1:
        raise InvalidParameterError(f"Profondeur invalide : {depth}")
    if n_total < NEURON_QUANTUM * depth:
        raise AllocationError(
            f"Budget {n_total} insuffisant pour {depth} couches (minimum {NEURON_QUANTUM * depth})"
        )
    if gamma <= 0.0:
        raise InvalidParameterError(f"gamma doit être > 0 (reçu {gamma})")

    if strategy == "uniform":
        allocation = _corrected(n_total, [_round_quantum(n_total / depth)] * depth)
    elif strategy in ("decreasing", "increasing"):
        phi = [float(k) ** (-gamma) for k in range(1, depth + 1)]
        total = sum(phi)
        allocation = _corrected(n_total, [_round_quantum(n_total * p / total) for p in phi])
        if strategy == "increasing":
            allocation.reverse()
    else:
        raise InvalidParameterError(f"Stratégie d'allocation inconnue : {strategy}")

    if min(allocation) < NEURON_QUANTUM:
        raise AllocationError(
            f"Allocation {allocation} : une couche compte moins de {NEURON_QUANTUM} neurones "
            f"(budget {n_total} trop petit pour {depth} couches)"
        )
    logger.debug("Allocation %s (N=%s, L=%s) : %s", strategy, n_total, depth, allocation)
    return allocation


def leakage_schedule(alpha_first: float, alpha_last: float, depth: int) -> list[float]:
    """
    Taux de fuite par couche, interpolés linéairement de la couche 1 à la couche L.

    Les extrémités sont restituées exactement ; le calcul intermédiaire est rationnel.

    Args:
      alpha_first: float: alpha de la couche 1, dans ]0, 1]
      alpha_last: float: alpha de la couche L, dans ]0, 1]
      depth: int: L >= 1

    Returns:
      list[float] de longueur L
    """
    for alpha in (alpha_first, alpha_last):
        if not 0.0 < alpha <= 1.0:
            raise InvalidParameterError(f"Taux de fuite hors de ]0, 1] : {alpha}")
    if depth < 1:
        raise InvalidParameterError(f"Profondeur invalide : {depth}")
    if depth == 1:
        return [alpha_first]

    first, last = Fraction(alpha_first), Fraction(alpha_last)
    schedule = [float(first + (last - first) * Fraction(k, depth - 1)) for k in range(depth)]
    schedule[0], schedule[-1] = alpha_first, alpha_last
    return schedule


def bias_profile(
    profile: BiasProfile, depth: int, base: float = 0.10, increment: float = 0.05
) -> list[float]:
    """
    Fraction de pixels ON de la région de biais, par couche.

    "uniform" : base partout ; "mild-increasing" : base + increment * (l - 1), bornée à 1.
    """
    if profile == "uniform":
        return [base] * depth
    if profile == "mild-increasing":
        return [min(1.0, base + increment * k) for k in range(depth)]
    raise InvalidParameterError(f"Profil de biais inconnu : {profile}")
