"""Picard lattices of weak del Pezzo surfaces with exact integer arithmetic.

Blow-ups of P^2 in ``n = 9 - d`` points use the basis ``(e0, e1, ..., en)``
with intersection form ``diag(1, -1, ..., -1)``.  Degree-8 surfaces that are
not blow-ups get rank-2 models: the quadric ``P1 x P1`` with basis
``(f1, f2)`` and the Hirzebruch surface ``F2`` with basis ``(s, f)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

# Every class handled here has coefficients far below this; bulk numpy paths
# assert against it so int64 products cannot overflow.
COEFF_BOUND = 1 << 20


class DimensionError(ValueError):
    """A class vector does not match the rank of its lattice."""


class Shape(str, enum.Enum):
    BLOWUP = "BlowupOfP2"
    QUADRIC = "QuadricP1xP1"
    HIRZEBRUCH2 = "Hirzebruch2"


@dataclass(frozen=True, order=True)
class DivisorClass:
    """Integer coefficient vector over a fixed lattice basis.

    Ordering is lexicographic on the coefficients, which is the canonical
    output order everywhere in the package.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        values = []
        for c in coeffs:
            if isinstance(c, bool) or int(c) != c:
                raise TypeError(f"coefficient {c!r} is not an integer")
            values.append(int(c))
        object.__setattr__(self, "coeffs", tuple(values))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def _check(self, other: DivisorClass) -> None:
        if len(self.coeffs) != len(other.coeffs):
            raise DimensionError(f"rank mismatch: {len(self.coeffs)} vs {len(other.coeffs)}")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(-a for a in self.coeffs)

    def __mul__(self, k: int) -> DivisorClass:
        return DivisorClass(k * a for a in self.coeffs)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"DivisorClass({list(self.coeffs)})"


@dataclass(frozen=True)
class LatticeModel:
    """Intersection form and canonical class for one surface shape."""

    degree: int
    shape: Shape
    gram: tuple[tuple[int, ...], ...]
    canonical: DivisorClass

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def n_points(self) -> int:
        """Number of blown-up points (zero for the rank-2 models)."""
        return self.rank - 1 if self.shape is Shape.BLOWUP else 0

    @cached_property
    def gram_array(self) -> np.ndarray:
        return np.array(self.gram, dtype=np.int64)

    def basis(self, i: int) -> DivisorClass:
        v = [0] * self.rank
        v[i] = 1
        return DivisorClass(v)

    def zero(self) -> DivisorClass:
        return DivisorClass([0] * self.rank)

    def vector(self, coeffs: Iterable[int]) -> DivisorClass:
        d = DivisorClass(coeffs)
        if len(d) != self.rank:
            raise DimensionError(f"expected {self.rank} coefficients, got {len(d)}")
        return d

    def pair(self, a: DivisorClass, b: DivisorClass) -> int:
        return pairing(self, a, b)

    def __repr__(self) -> str:
        return f"LatticeModel(degree={self.degree}, shape={self.shape.value})"


def pairing(model: LatticeModel, a: DivisorClass, b: DivisorClass) -> int:
    """Intersection number ``a^T gram b``."""
    n = model.rank
    if len(a) != n or len(b) != n:
        raise DimensionError(f"classes must have rank {n}, got {len(a)} and {len(b)}")
    g = model.gram
    if model.shape is Shape.BLOWUP:
        return a[0] * b[0] - sum(x * y for x, y in zip(a.coeffs[1:], b.coeffs[1:]))
    return sum(a[i] * g[i][j] * b[j] for i in range(n) for j in range(n) if g[i][j])


def canonical_class(model: LatticeModel) -> DivisorClass:
    return model.canonical


def pairing_matrix(model: LatticeModel, left: Sequence[DivisorClass], right: Sequence[DivisorClass]) -> np.ndarray:
    """All intersection numbers between two lists of classes, as an int64 array."""
    a = as_array(model, left)
    b = as_array(model, right)
    return a @ model.gram_array @ b.T


def as_array(model: LatticeModel, classes: Sequence[DivisorClass]) -> np.ndarray:
    if not classes:
        return np.zeros((0, model.rank), dtype=np.int64)
    arr = np.array([c.coeffs for c in classes], dtype=np.int64)
    if arr.shape[1] != model.rank:
        raise DimensionError(f"classes must have rank {model.rank}")
    if np.abs(arr).max() >= COEFF_BOUND:
        raise OverflowError("coefficient outside the guarded range")
    return arr


@lru_cache(maxsize=None)
def blowup(degree: int) -> LatticeModel:
    """Blow-up of P^2 in ``9 - degree`` points, degree 1..7."""
    if not 1 <= degree <= 7:
        raise ValueError(f"blow-up models exist for degree 1..7, got {degree}")
    n = 9 - degree
    gram = tuple(
        tuple((1 if i == 0 else -1) if i == j else 0 for j in range(n + 1)) for i in range(n + 1)
    )
    return LatticeModel(degree, Shape.BLOWUP, gram, DivisorClass([-3] + [1] * n))


@lru_cache(maxsize=None)
def quadric() -> LatticeModel:
    return LatticeModel(8, Shape.QUADRIC, ((0, 1), (1, 0)), DivisorClass([-2, -2]))


@lru_cache(maxsize=None)
def hirzebruch2() -> LatticeModel:
    return LatticeModel(8, Shape.HIRZEBRUCH2, ((-2, 1), (1, 0)), DivisorClass([-2, -4]))


def get_model(degree: int, shape: Shape | str | None = None) -> LatticeModel:
    """Look up the model for a degree; degree 8 defaults to Hirzebruch-2."""
    if shape is not None:
        shape = Shape(shape)
    if degree == 8:
        if shape is Shape.QUADRIC:
            return quadric()
        if shape in (None, Shape.HIRZEBRUCH2):
            return hirzebruch2()
        raise ValueError("degree 8 is not a blow-up of P^2 in this package")
    if shape not in (None, Shape.BLOWUP):
        raise ValueError(f"shape {shape.value} only exists in degree 8")
    return blowup(degree)


def all_models() -> list[LatticeModel]:
    return [blowup(d) for d in range(1, 8)] + [quadric(), hirzebruch2()]
