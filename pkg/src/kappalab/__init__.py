"""Exact symbolic toolkit for kappa-Minkowski realizations and kappa-Poincare Hopf algebras."""

__version__ = "0.1.0"
