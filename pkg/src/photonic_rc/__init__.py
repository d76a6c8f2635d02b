"""
photonic_rc : simulateur de calcul par réservoir photonique profond binarisé.

Encodage panier, transformée de diffusion aléatoire, dynamique de réservoir profond
multiplexée en temps, lecture ridge et protocoles d'évaluation.
"""

__version__ = "0.1.0"
