"""Weyl reflections, Galois actions as lattice isometries, and conic-bundle classes.

A Galois action is recorded only through the isometries it induces on the
Picard lattice of the geometric surface.  Matrices act on column coefficient
vectors in basis order.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .lattice import DivisorClass, LatticeModel, Shape, as_array, pairing
from .lines import DomainError, enumerate_minus_one_classes, lines
from .roots import Configuration, enumerate_minus_two_classes

DEFAULT_CAP = 10_000

Matrix = tuple[tuple[int, ...], ...]


class InvalidActionError(ValueError):
    """A generator is not an admissible isometry of the lattice."""


class GroupTooLargeError(RuntimeError):
    """Group closure exceeded the configured element cap."""


def reflect(model: LatticeModel, root: DivisorClass, d: DivisorClass) -> DivisorClass:
    """Reflection ``d -> d + (d.r) r`` in a (-2)-class ``r``."""
    if pairing(model, root, root) != -2:
        raise DomainError(f"{list(root.coeffs)} is not a (-2)-class")
    return d + root * pairing(model, d, root)


def reflection_matrix(model: LatticeModel, root: DivisorClass) -> np.ndarray:
    if pairing(model, root, root) != -2:
        raise DomainError(f"{list(root.coeffs)} is not a (-2)-class")
    r = np.array(root.coeffs, dtype=np.int64)
    return np.eye(model.rank, dtype=np.int64) + np.outer(r, r @ model.gram_array)


def _freeze(m: np.ndarray) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in m)


def act(g: Matrix | np.ndarray, d: DivisorClass) -> DivisorClass:
    return DivisorClass(np.asarray(g, dtype=np.int64) @ np.array(d.coeffs, dtype=np.int64))


def exact_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q by Gaussian elimination on Fractions."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    rank, ncols = 0, len(m[0])
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class GaloisAction:
    """Finite group of isometries fixing K, given by generators.

    When ``config`` is set, every generator must also permute its roots and
    its lines.
    """

    model: LatticeModel
    generators: tuple[Matrix, ...]
    config: Configuration | None = field(default=None, compare=False)

    def __post_init__(self):
        gens = tuple(_freeze(np.asarray(g, dtype=np.int64)) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        problems = check_generators(self.model, gens, self.config)
        if problems:
            raise InvalidActionError("; ".join(problems))

    @classmethod
    def trivial(cls, model: LatticeModel, config: Configuration | None = None) -> GaloisAction:
        return cls(model, (), config)

    def arrays(self) -> list[np.ndarray]:
        return [np.array(g, dtype=np.int64) for g in self.generators]


def check_generators(
    model: LatticeModel, generators: Iterable[Matrix], config: Configuration | None = None
) -> list[str]:
    problems = []
    g0 = model.gram_array
    k = np.array(model.canonical.coeffs, dtype=np.int64)
    for n, g in enumerate(generators):
        a = np.array(g, dtype=np.int64)
        if a.shape != (model.rank, model.rank):
            problems.append(f"generator {n}: shape {a.shape} != {(model.rank, model.rank)}")
            continue
        if not np.array_equal(a.T @ g0 @ a, g0):
            problems.append(f"generator {n} does not preserve the intersection form")
        if not np.array_equal(a @ k, k):
            problems.append(f"generator {n} does not fix K")
        if config is not None:
            for label, classes in (("roots", config.roots), ("lines", lines(config).lines)):
                if {act(a, c) for c in classes} != set(classes):
                    problems.append(f"generator {n} does not permute the configuration's {label}")
    return problems


def group_elements(action: GaloisAction, cap: int = DEFAULT_CAP) -> list[Matrix]:
    """All elements of the generated group, by breadth-first closure."""
    n = action.model.rank
    ident = _freeze(np.eye(n, dtype=np.int64))
    gens = action.arrays()
    seen = {ident}
    queue = deque([ident])
    while queue:
        cur = np.array(queue.popleft(), dtype=np.int64)
        for g in gens:
            nxt = _freeze(g @ cur)
            if nxt not in seen:
                if len(seen) >= cap:
                    raise GroupTooLargeError(f"group has more than {cap} elements")
                seen.add(nxt)
                queue.append(nxt)
    return sorted(seen)


def invariant_rank(action: GaloisAction) -> int:
    """Rank of the sublattice fixed by every generator."""
    n = action.model.rank
    rows: list[list[int]] = []
    for g in action.arrays():
        rows.extend((g - np.eye(n, dtype=np.int64)).tolist())
    return n - exact_rank(rows)


def orbits(action: GaloisAction, classes: Iterable[DivisorClass]) -> list[tuple[DivisorClass, ...]]:
    """Orbits of the generated group on ``classes``, each sorted, in canonical order."""
    gens = action.arrays()
    remaining = set(classes)
    out = []
    for start in sorted(remaining):
        if start not in remaining:
            continue
        orbit = {start}
        queue = [start]
        while queue:
            c = queue.pop()
            for g in gens:
                img = act(g, c)
                if img not in orbit:
                    orbit.add(img)
                    queue.append(img)
        remaining -= orbit
        out.append(tuple(sorted(orbit)))
    return out


@dataclass(frozen=True)
class MinimalityResult:
    minimal: bool
    witness: tuple[DivisorClass, ...] | None
    orbits: tuple[tuple[DivisorClass, ...], ...] = ()


def is_contractible(model: LatticeModel, orbit: Sequence[DivisorClass]) -> bool:
    """A Galois orbit of lines can be blown down when it is a disjoint union."""
    return all(pairing(model, a, b) == 0 for a, b in itertools.combinations(orbit, 2))


def is_minimal(config: Configuration, action: GaloisAction) -> MinimalityResult:
    """Minimal over k iff no orbit of lines is a single line or a disjoint union of lines."""
    if action.model != config.model:
        raise DomainError("action and configuration live on different lattices")
    ls = lines(config).lines
    for g in action.arrays():
        if {act(g, c) for c in ls} != set(ls):
            raise DomainError("action does not preserve the line set")
        if {act(g, c) for c in config.roots} != set(config.roots):
            raise DomainError("action does not preserve the (-2)-curves")
    orbs = orbits(action, ls)
    for orb in orbs:
        if is_contractible(config.model, orb):
            return MinimalityResult(False, orb, tuple(orbs))
    return MinimalityResult(True, None, tuple(orbs))


def simple_roots(model: LatticeModel) -> list[DivisorClass]:
    """A simple system of the full root lattice of K-perp."""
    if model.shape is Shape.HIRZEBRUCH2:
        return [DivisorClass([1, 0])]
    if model.shape is Shape.QUADRIC:
        return [DivisorClass([1, -1])]
    n = model.n_points
    out = []
    for i in range(1, n):
        v = [0] * (n + 1)
        v[i], v[i + 1] = 1, -1
        out.append(DivisorClass(v))
    if n >= 3:
        out.append(DivisorClass([1, -1, -1, -1] + [0] * (n - 3)))
    return out


@lru_cache(maxsize=None)
def weyl_group(model: LatticeModel, cap: int = DEFAULT_CAP) -> tuple[Matrix, ...]:
    """Elements of the Weyl group generated by simple reflections (small degrees only)."""
    gens = tuple(_freeze(reflection_matrix(model, r)) for r in simple_roots(model))
    return tuple(group_elements(GaloisAction(model, gens), cap))


def weyl_orbit(model: LatticeModel, d: DivisorClass, cap: int = DEFAULT_CAP) -> list[DivisorClass]:
    """Orbit of a class under the Weyl group, by breadth-first reflection."""
    gens = [reflection_matrix(model, r) for r in simple_roots(model)]
    seen = {d}
    queue = deque([d])
    while queue:
        c = queue.popleft()
        for g in gens:
            img = act(g, c)
            if img not in seen:
                if len(seen) >= cap:
                    raise GroupTooLargeError(f"orbit has more than {cap} elements")
                seen.add(img)
                queue.append(img)
    return sorted(seen)


def element_order(g: Matrix | np.ndarray, limit: int = 120) -> int:
    a = np.asarray(g, dtype=np.int64)
    ident = np.eye(len(a), dtype=np.int64)
    p = a
    for k in range(1, limit + 1):
        if np.array_equal(p, ident):
            return k
        p = a @ p
    raise GroupTooLargeError(f"element order exceeds {limit}")


def stabilizing_isometries(
    config: Configuration, order: int | None = None, cap: int = DEFAULT_CAP
) -> list[Matrix]:
    """Weyl-group elements (optionally of exact ``order``) preserving the roots and lines."""
    roots = set(config.roots)
    ls = set(lines(config).lines)
    out = []
    for g in weyl_group(config.model, cap):
        if order is not None and element_order(g) != order:
            continue
        a = np.array(g, dtype=np.int64)
        if {act(a, r) for r in roots} == roots and {act(a, c) for c in ls} == ls:
            out.append(g)
    return out


@dataclass(frozen=True)
class FiberClass:
    """Conic class ``f`` with its singular fibres ``E + E'`` among the lines."""

    f: DivisorClass
    decompositions: tuple[tuple[DivisorClass, DivisorClass], ...]


def _is_conic(model: LatticeModel, f: DivisorClass) -> bool:
    return pairing(model, f, f) == 0 and pairing(model, model.canonical, f) == -2 and f[0] >= 0


@lru_cache(maxsize=None)
def conic_classes(model: LatticeModel) -> tuple[DivisorClass, ...]:
    """Classes with f^2 = 0, K.f = -2 arising as E + E' or from the standard families."""
    found: set[DivisorClass] = set()
    if model.shape is Shape.QUADRIC:
        found |= {DivisorClass([1, 0]), DivisorClass([0, 1])}
    elif model.shape is Shape.HIRZEBRUCH2:
        found.add(DivisorClass([0, 1]))
    else:
        for i in range(1, model.n_points + 1):
            found.add(DivisorClass([1] + [-1 if j == i else 0 for j in range(1, model.n_points + 1)]))
        cands = enumerate_minus_one_classes(model)
        if cands:
            ca = as_array(model, cands)
            g = ca @ model.gram_array @ ca.T
            for i, j in zip(*np.nonzero(np.triu(g == 1, 1))):
                found.add(cands[i] + cands[j])
    return tuple(sorted(c for c in found if _is_conic(model, c)))


def fiber_classes(config: Configuration) -> list[FiberClass]:
    """Every conic class, each with its decompositions into two meeting lines of ``config``."""
    model = config.model
    ls = lines(config).lines
    pairs: dict[DivisorClass, list[tuple[DivisorClass, DivisorClass]]] = {}
    if ls:
        la = as_array(model, ls)
        g = la @ model.gram_array @ la.T
        for i, j in zip(*np.nonzero(np.triu(g == 1, 1))):
            pairs.setdefault(ls[i] + ls[j], []).append((ls[i], ls[j]))
    return [FiberClass(f, tuple(sorted(pairs.get(f, [])))) for f in conic_classes(model)]


def fiber_class(config: Configuration, f: DivisorClass) -> FiberClass:
    for fc in fiber_classes(config):
        if fc.f == f:
            return fc
    raise DomainError(f"{list(f.coeffs)} is not a conic class of this lattice")


def dual_fibration(model: LatticeModel, f1: DivisorClass) -> DivisorClass:
    """The second conic class ``(4/d)(-K) - f1`` for degree 1, 2 or 4."""
    if model.degree not in (1, 2, 4):
        raise DomainError(f"4/d is not an integer for degree {model.degree}")
    if pairing(model, f1, f1) != 0 or pairing(model, model.canonical, f1) != -2:
        raise DomainError(f"{list(f1.coeffs)} is not a conic class")
    return (-model.canonical) * (4 // model.degree) - f1


def minus_two_classes_signed(model: LatticeModel) -> frozenset[DivisorClass]:
    """Positive (-2)-classes together with their negatives."""
    pos = enumerate_minus_two_classes(model)
    return frozenset(pos) | frozenset(-r for r in pos)
