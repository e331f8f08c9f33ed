"""Quasi-minimality, the alpha/beta incidence argument and the cylinder table."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .lattice import DivisorClass, Shape, as_array
from .lines import incidence_profiles, line_count, lines
from .roots import Configuration, ade_components, strip_suffix
from .tables import MINIMAL_TYPES, find_row


class NotApplicableError(ValueError):
    """The hypotheses of the cylinder criterion do not hold."""


@dataclass(frozen=True)
class QuasiMinimalityReport:
    verdict: bool
    type_check: bool
    witness: DivisorClass | None
    failing_lines: tuple[DivisorClass, ...] = ()


def is_mA1_or_mA2(config: Configuration) -> bool:
    comps = ade_components(config.model, config.roots)
    return bool(comps) and len(set(comps)) == 1 and comps[0] in (("A", 1), ("A", 2))


def _line_gram(config: Configuration) -> np.ndarray:
    ls = lines(config).lines
    la = as_array(config.model, ls)
    return la @ config.model.gram_array @ la.T


def is_quasi_minimal(config: Configuration) -> QuasiMinimalityReport:
    """Type is mA1/mA2, and every line has a meeting partner with the same
    incidence cardinalities over (-1)- and (-2)-curves, multiplicities 1 and 2.
    """
    type_ok = is_mA1_or_mA2(config)
    profiles = incidence_profiles(config)
    failing = []
    if profiles:
        sigs = [p.signature() for p in profiles]
        ll = _line_gram(config)
        for i, p in enumerate(profiles):
            partners = (j for j in np.flatnonzero(ll[i] > 0) if j != i)
            if not any(sigs[j] == sigs[i] for j in partners):
                failing.append(p.line)
    witness = failing[0] if failing else None
    return QuasiMinimalityReport(type_ok and not failing, type_ok, witness, tuple(failing))


@dataclass(frozen=True)
class AlphaBetaReport:
    alpha: int
    beta: int
    beta_lines: tuple[DivisorClass, ...]
    disjoint: bool


def alpha_beta(config: Configuration, alpha: int) -> AlphaBetaReport:
    """Lines meeting exactly ``alpha`` distinct (-2)-curves, and whether they are disjoint.

    A line meeting a curve with multiplicity 2 counts that curve once.
    """
    if alpha < 1:
        raise ValueError("alpha must be positive")
    chosen = tuple(p.line for p in incidence_profiles(config) if p.roots_met == alpha)
    disjoint = True
    if len(chosen) > 1:
        ca = as_array(config.model, chosen)
        g = ca @ config.model.gram_array @ ca.T
        disjoint = not any(g[i, j] for i, j in itertools.combinations(range(len(chosen)), 2))
    return AlphaBetaReport(alpha, len(chosen), chosen, disjoint)


def alpha_beta_witness_holds(config: Configuration, report: AlphaBetaReport) -> bool:
    """Each beta-line meets ``alpha`` roots while every line meeting it meets a different number."""
    profiles = {p.line: p for p in incidence_profiles(config)}
    ll = _line_gram(config)
    index = {line: i for i, line in enumerate(lines(config).lines)}
    ls = lines(config).lines
    for line in report.beta_lines:
        if profiles[line].roots_met != report.alpha:
            return False
        i = index[line]
        for j in np.flatnonzero(ll[i] > 0):
            if j != i and profiles[ls[j]].roots_met == report.alpha:
                return False
    return True


def minimal_type_membership(degree: int, ade: str, line_count: int) -> bool:
    """Whether the type (d, Singularities, #Lines) admits a minimal surface.

    Raises CatalogMissError when the triple is not a Table-3 type.
    """
    row = find_row(degree, ade, line_count)
    return (degree, row.singularities) in MINIMAL_TYPES


def admits_minimal_form(config: Configuration) -> bool:
    return minimal_type_membership(config.degree, strip_suffix(config.label or ""), line_count(config))


@dataclass(frozen=True)
class CylinderVerdict:
    a1_cylinder: bool
    a2_plane: bool


def cylinder_verdict(
    degree: int,
    is_minimal: bool,
    has_section: bool,
    has_rational_point: bool,
    shape: Shape | str | None = None,
) -> CylinderVerdict:
    """Cylinder decision for a minimal weak del Pezzo surface.

    A rational point yields a conic bundle with a section, and a Hirzebruch-2
    form always has one (its (-2)-section is Galois-stable).
    """
    if not is_minimal:
        raise NotApplicableError("the criterion only covers minimal surfaces")
    if not 1 <= degree <= 8:
        raise ValueError(f"degree must be in 1..8, got {degree}")
    section = has_section or has_rational_point
    if shape is not None and Shape(shape) is Shape.HIRZEBRUCH2:
        section = True
    return CylinderVerdict(degree == 8 and section, degree == 8 and has_rational_point)
