"""(-1)-classes, the lines of a configuration and their incidence data."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .lattice import DivisorClass, LatticeModel, Shape, as_array, pairing, pairing_matrix
from .roots import Configuration, placements


class DomainError(ValueError):
    """An operation was applied outside its domain."""


# (e0 coefficient, nonzero e_i coefficients); e_i itself is handled apart
_LINE_PATTERNS = [
    (1, [-1] * 2),
    (2, [-1] * 5),
    (3, [-2] + [-1] * 6),
    (4, [-2] * 3 + [-1] * 5),
    (5, [-2] * 6 + [-1] * 2),
    (6, [-3] + [-2] * 7),
]


@lru_cache(maxsize=None)
def enumerate_minus_one_classes(model: LatticeModel) -> tuple[DivisorClass, ...]:
    """All classes with D^2 = -1, K.D = -1 and nonnegative e0-coefficient."""
    if model.shape is not Shape.BLOWUP:
        return ()
    n = model.n_points
    out = []
    for i in range(1, n + 1):
        v = [0] * (n + 1)
        v[i] = 1
        out.append(DivisorClass(v))
    for a, vals in _LINE_PATTERNS:
        for p in placements(n, vals):
            out.append(DivisorClass((a,) + p))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _line_array(model: LatticeModel) -> np.ndarray:
    return as_array(model, enumerate_minus_one_classes(model))


@dataclass(frozen=True)
class LineSet:
    config: Configuration
    lines: tuple[DivisorClass, ...]

    def __len__(self) -> int:
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __contains__(self, item) -> bool:
        return item in self._index

    @cached_property
    def _index(self) -> frozenset:
        return frozenset(self.lines)


def line_mask(config: Configuration) -> np.ndarray:
    """Boolean mask over ``enumerate_minus_one_classes`` selecting the lines."""
    model = config.model
    cands = _line_array(model)
    if not config.roots:
        return np.ones(len(cands), dtype=bool)
    pm = cands @ model.gram_array @ as_array(model, config.roots).T
    return (pm >= 0).all(axis=1)


@lru_cache(maxsize=4096)
def lines(config: Configuration) -> LineSet:
    """(-1)-curves of the configuration: candidates meeting every root nonnegatively."""
    cands = enumerate_minus_one_classes(config.model)
    mask = line_mask(config)
    return LineSet(config, tuple(c for c, keep in zip(cands, mask) if keep))


def line_count(config: Configuration) -> int:
    return int(line_mask(config).sum())


@dataclass(frozen=True)
class IncidenceProfile:
    """Curves met by ``line`` once (``*1``) or twice (``*2``).

    ``m2*`` collects (-2)-curves, ``m1*`` collects other (-1)-curves.
    """

    line: DivisorClass
    m21: tuple[DivisorClass, ...]
    m22: tuple[DivisorClass, ...]
    m11: tuple[DivisorClass, ...]
    m12: tuple[DivisorClass, ...]

    def signature(self) -> tuple[int, int, int, int]:
        """Cardinalities ordered (1,1), (1,2), (2,1), (2,2)."""
        return (len(self.m11), len(self.m12), len(self.m21), len(self.m22))

    @property
    def roots_met(self) -> int:
        return len(self.m21) + len(self.m22)


def incidence(config: Configuration, line: DivisorClass) -> IncidenceProfile:
    ls = lines(config)
    if line not in ls:
        raise DomainError(f"{list(line.coeffs)} is not a line of this configuration")
    model = config.model
    by_root = {1: [], 2: []}
    for m in config.roots:
        p = pairing(model, line, m)
        if p in by_root:
            by_root[p].append(m)
    by_line = {1: [], 2: []}
    for other in ls.lines:
        if other == line:
            continue
        p = pairing(model, line, other)
        if p in by_line:
            by_line[p].append(other)
    return IncidenceProfile(
        line, tuple(by_root[1]), tuple(by_root[2]), tuple(by_line[1]), tuple(by_line[2])
    )


@lru_cache(maxsize=1024)
def incidence_profiles(config: Configuration) -> tuple[IncidenceProfile, ...]:
    """Profiles for every line, in line order (vectorised)."""
    model = config.model
    ls = lines(config).lines
    if not ls:
        return ()
    la = as_array(model, ls)
    g = model.gram_array
    ll = la @ g @ la.T
    np.fill_diagonal(ll, 0)
    lr = la @ g @ as_array(model, config.roots).T if config.roots else np.zeros((len(ls), 0), np.int64)
    out = []
    for i, line in enumerate(ls):
        row_l, row_r = ll[i], lr[i]
        out.append(
            IncidenceProfile(
                line,
                tuple(config.roots[j] for j in np.flatnonzero(row_r == 1)),
                tuple(config.roots[j] for j in np.flatnonzero(row_r == 2)),
                tuple(ls[j] for j in np.flatnonzero(row_l == 1)),
                tuple(ls[j] for j in np.flatnonzero(row_l == 2)),
            )
        )
    return tuple(out)


def lines_meeting_roots(config: Configuration) -> tuple[DivisorClass, ...]:
    """Lines with positive intersection against at least one root."""
    ls = lines(config).lines
    if not ls or not config.roots:
        return ()
    pm = pairing_matrix(config.model, ls, config.roots)
    return tuple(line for line, row in zip(ls, pm) if (row > 0).any())


def line_root_pairings(config: Configuration) -> np.ndarray:
    """Matrix of (line . root) over the configuration's lines and roots."""
    return pairing_matrix(config.model, lines(config).lines, config.roots)
