# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : models/errors.py

Description :
Hiérarchie d'exceptions du simulateur. Chaque famille d'erreur de la chaîne
(encodage, optique, réservoir, lecture, prétraitement, protocoles) possède sa classe,
toutes dérivées de 'PhotonicRcError' pour que le moteur d'expérience puisse
interrompre un fold proprement sans avaler les erreurs de programmation.

Utilisé par :
    tous les sous-paquets

Auteur : Équipe photonic-rc
"""


class PhotonicRcError(Exception):
    """Racine de toutes les erreurs métier du simulateur."""


class InvalidParameterError(PhotonicRcError, ValueError):
    """Paramètre hors de son domaine (n_bin < 2, percentile invalide, k trop grand…)."""


class EncodingDomainError(PhotonicRcError, ValueError):
    """Valeur hors de [0, 1] présentée à l'encodeur panier (l'encodeur ne tronque jamais)."""

    def __init__(self, value: float, index: int | None = None) -> None:
        self.value = value
        self.index = index
        where = "" if index is None else f" (composante {index})"
        super().__init__(f"Valeur {value!r} hors de [0, 1]{where} : tronquer avant l'encodage.")


class ShapeError(PhotonicRcError, ValueError):
    """Dimensions incompatibles entre motif, matrice, état ou modèle."""


class ResourceError(PhotonicRcError, RuntimeError):
    """Dépassement du plafond mémoire configuré."""


class CalibrationError(PhotonicRcError, RuntimeError):
    """Calibration dégénérée (intensités toutes nulles)."""


class AllocationError(PhotonicRcError, ValueError):
    """Budget de neurones trop petit pour la profondeur demandée."""


class IllConditionedError(PhotonicRcError, RuntimeError):
    """Système de la régression ridge singulier ou numériquement inexploitable."""

    def __init__(self, lam: float, detail: str = "") -> None:
        self.lam = lam
        suffix = f" : {detail}" if detail else ""
        super().__init__(f"Système ridge mal conditionné pour lambda={lam!r}{suffix}")


class ProtocolError(PhotonicRcError, ValueError):
    """Jeu de données incompatible avec le protocole de validation croisée demandé."""


class FormatError(PhotonicRcError, ValueError):
    """Fichier de données ou artefact mal formé."""


class NotFittedError(PhotonicRcError, RuntimeError):
    """Transformation utilisée avant d'avoir été ajustée sur la partition d'entraînement."""


class InvalidInputError(PhotonicRcError, ValueError):
    """Entrée vide ou inexploitable (séquence sans trame…)."""


class ConfigError(PhotonicRcError, ValueError):
    """Fichier de configuration invalide."""


class LeakageError(PhotonicRcError, RuntimeError):
    """Un paramètre ajusté dépend des lignes de test (fuite détectée)."""
