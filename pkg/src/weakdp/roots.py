"""(-2)-classes, configurations of (-2)-curves and their ADE type."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .lattice import DimensionError, DivisorClass, LatticeModel, Shape, pairing


class ADEError(ValueError):
    """The Gram graph of a root set is not a disjoint union of ADE diagrams."""


class ConfigurationError(ValueError):
    """A root set violates the configuration invariants."""

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def placements(n: int, values: Sequence[int]) -> Iterable[tuple[int, ...]]:
    """All length-``n`` vectors holding the multiset ``values`` and zeros elsewhere."""
    counts = Counter(values)
    if sum(counts.values()) > n:
        return

    def rec(free: tuple[int, ...], items: list[tuple[int, int]]):
        if not items:
            yield {}
            return
        (val, k), rest = items[0], items[1:]
        for chosen in itertools.combinations(free, k):
            left = tuple(i for i in free if i not in chosen)
            for sub in rec(left, rest):
                out = dict(sub)
                out.update((i, val) for i in chosen)
                yield out

    for assign in rec(tuple(range(n)), sorted(counts.items())):
        yield tuple(assign.get(i, 0) for i in range(n))


# (e0 coefficient, nonzero e_i coefficients) for the positive roots
_ROOT_PATTERNS = [
    (1, [-1, -1, -1]),  # M1
    (2, [-1] * 6),  # M2
    (3, [-2] + [-1] * 7),  # M3
]


@lru_cache(maxsize=None)
def enumerate_minus_two_classes(model: LatticeModel) -> tuple[DivisorClass, ...]:
    """Positive (-2)-classes orthogonal to K, from the closed-form families.

    Only effective candidates are returned: ``M0`` (``ei - ej`` with i < j),
    ``M1``, ``M2``, ``M3`` as the degree allows, or ``s`` on Hirzebruch-2.
    The quadric has no (-2)-curve candidates.
    """
    if model.shape is Shape.HIRZEBRUCH2:
        return (DivisorClass([1, 0]),)
    if model.shape is Shape.QUADRIC:
        return ()
    n = model.n_points
    out = []
    for i, j in itertools.combinations(range(1, n + 1), 2):
        v = [0] * (n + 1)
        v[i], v[j] = 1, -1
        out.append(DivisorClass(v))
    for a, vals in _ROOT_PATTERNS:
        for p in placements(n, vals):
            out.append(DivisorClass((a,) + p))
    return tuple(sorted(out))


def gram_graph(model: LatticeModel, roots: Sequence[DivisorClass]) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {i: set() for i in range(len(roots))}
    for i, j in itertools.combinations(range(len(roots)), 2):
        if pairing(model, roots[i], roots[j]) == 1:
            adj[i].add(j)
            adj[j].add(i)
    return adj


def _components(adj: dict[int, set[int]]) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for start in sorted(adj):
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _arm_length(adj: dict[int, set[int]], center: int, first: int) -> int:
    length, prev, cur = 1, center, first
    while True:
        nxt = [w for w in adj[cur] if w != prev]
        if not nxt:
            return length
        prev, cur = cur, nxt[0]
        length += 1


def classify_component(adj: dict[int, set[int]], comp: list[int]) -> tuple[str, int]:
    """Dynkin label (letter, rank) of one connected tree component."""
    n = len(comp)
    edges = sum(len(adj[v]) for v in comp) // 2
    if edges != n - 1:
        raise ADEError(f"component of {n} roots has a cycle")
    degrees = sorted(len(adj[v]) for v in comp)
    if n == 1 or degrees[-1] <= 2:
        return "A", n
    branch = [v for v in comp if len(adj[v]) >= 3]
    if len(branch) != 1 or len(adj[branch[0]]) != 3:
        raise ADEError(f"component of {n} roots has degree sequence {degrees}")
    arms = sorted(_arm_length(adj, branch[0], w) for w in adj[branch[0]])
    if arms[:2] == [1, 1]:
        return "D", n
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return "E", n
    raise ADEError(f"branch arms {arms} do not form an ADE diagram")


_LETTER_ORDER = {"E": 0, "D": 1, "A": 2}


def format_ade(components: Iterable[tuple[str, int]]) -> str:
    """Render components the way Table-style strings do: ``A3+4A1``, ``2D4``."""
    counts = Counter(components)
    keys = sorted(counts, key=lambda c: (-c[1], _LETTER_ORDER[c[0]]))
    parts = []
    for letter, rank in keys:
        k = counts[(letter, rank)]
        parts.append(f"{k if k > 1 else ''}{letter}{rank}")
    return "+".join(parts)


def ade_components(model: LatticeModel, roots: Sequence[DivisorClass]) -> list[tuple[str, int]]:
    adj = gram_graph(model, roots)
    return [classify_component(adj, c) for c in _components(adj)]


def ade_label(model: LatticeModel, roots: Sequence[DivisorClass]) -> str:
    return format_ade(ade_components(model, roots))


def strip_suffix(label: str) -> str:
    """``2A1(1)`` -> ``2A1``."""
    return label[:-3] if label.endswith(("(1)", "(2)")) else label


@dataclass(frozen=True)
class Configuration:
    """Declared irreducible (-2)-curves on a surface with the given lattice."""

    model: LatticeModel
    roots: tuple[DivisorClass, ...]
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(sorted(set(self.roots))))

    @classmethod
    def of(cls, model: LatticeModel, roots: Iterable[DivisorClass]) -> Configuration:
        """Validated configuration; raises ConfigurationError on any violation."""
        report = validate_configuration(model, roots)
        if not report.ok:
            raise ConfigurationError(report.violations)
        return report.configuration

    @property
    def degree(self) -> int:
        return self.model.degree


def ade_type(config: Configuration) -> str:
    return ade_label(config.model, config.roots)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    configuration: Configuration | None
    violations: tuple[str, ...]


def max_roots(model: LatticeModel) -> int:
    if model.shape is Shape.BLOWUP:
        return model.n_points
    return 1 if model.shape is Shape.HIRZEBRUCH2 else 0


def validate_configuration(model: LatticeModel, roots: Iterable[DivisorClass]) -> ValidationReport:
    """Check every configuration invariant and collect all violations."""
    roots = list(roots)
    problems: list[str] = []
    good: list[DivisorClass] = []
    if len(set(roots)) != len(roots):
        problems.append("duplicate roots")
    for r in sorted(set(roots)):
        if len(r) != model.rank:
            problems.append(f"{list(r.coeffs)}: rank {len(r)} != {model.rank}")
            continue
        self_int = pairing(model, r, r)
        k_int = pairing(model, model.canonical, r)
        if self_int != -2:
            problems.append(f"{list(r.coeffs)}: self-intersection {self_int} != -2")
        if k_int != 0:
            problems.append(f"{list(r.coeffs)}: K-intersection {k_int} != 0")
        if self_int == -2 and k_int == 0:
            good.append(r)
    for a, b in itertools.combinations(good, 2):
        p = pairing(model, a, b)
        if p not in (0, 1):
            problems.append(f"{list(a.coeffs)} . {list(b.coeffs)} = {p}, not in {{0, 1}}")
    if len(set(roots)) > max_roots(model):
        problems.append(f"{len(set(roots))} roots exceed rank of K-perp ({max_roots(model)})")
    label = None
    if not problems:
        try:
            label = ade_label(model, sorted(good))
        except ADEError as exc:
            problems.append(f"Gram graph not ADE: {exc}")
    if problems:
        return ValidationReport(False, None, tuple(problems))
    return ValidationReport(True, Configuration(model, tuple(good), label), ())


__all__ = [
    "ADEError",
    "Configuration",
    "ConfigurationError",
    "DimensionError",
    "ValidationReport",
    "ade_label",
    "ade_type",
    "enumerate_minus_two_classes",
    "format_ade",
    "strip_suffix",
    "validate_configuration",
]
