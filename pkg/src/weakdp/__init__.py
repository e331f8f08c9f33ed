"""Lattice computations for weak del Pezzo surfaces: lines, (-2)-curve
configurations, quasi-minimality, Galois descent and the classification tables."""

from __future__ import annotations

from .lattice import DivisorClass, LatticeModel, Shape, blowup, get_model, hirzebruch2, pairing, quadric
from .lines import enumerate_minus_one_classes, incidence, line_count, lines
from .minimality import alpha_beta, cylinder_verdict, is_quasi_minimal
from .roots import Configuration, ade_type, enumerate_minus_two_classes, validate_configuration

__version__ = "0.1.0"

__all__ = [
    "Configuration",
    "DivisorClass",
    "LatticeModel",
    "Shape",
    "ade_type",
    "alpha_beta",
    "blowup",
    "cylinder_verdict",
    "enumerate_minus_one_classes",
    "enumerate_minus_two_classes",
    "get_model",
    "hirzebruch2",
    "incidence",
    "is_quasi_minimal",
    "line_count",
    "lines",
    "pairing",
    "quadric",
    "validate_configuration",
]
