"""Symbolic names for lattice classes and their JSON literal forms.

Blow-up models understand ``e<i>``, ``L:i,j`` (``e0 - ei - ej``) and the
root families

* ``M0:i,j``   = ei - ej
* ``M1:i,j,k`` = e0 - ei - ej - ek
* ``M2:i,..``  = 2e0 - (e1 + ... + en) + (sum of the ``3 - d`` listed e's)
* ``M3:i``     = 3e0 - (e1 + ... + e8) - ei   (degree 1 only)

plus ``K`` / ``-K``.  The rank-2 models use ``f1``/``f2`` (quadric) and
``s``/``f`` (Hirzebruch-2).
"""

from __future__ import annotations

import re
from typing import Sequence, Union

from .lattice import DivisorClass, LatticeModel, Shape

ClassLiteral = Union[str, Sequence[int]]


class SymbolError(ValueError):
    """A class literal could not be parsed for the given model."""


_RANK2_NAMES = {
    Shape.QUADRIC: {"f1": (1, 0), "f2": (0, 1)},
    Shape.HIRZEBRUCH2: {"s": (1, 0), "f": (0, 1)},
}

_FAMILY_RE = re.compile(r"^(L|M0|M1|M2|M3):\s*([0-9,\s]*)$")
_E_RE = re.compile(r"^e(\d+)$")


def _indices(model: LatticeModel, idx: Sequence[int], count: int, name: str) -> list[int]:
    n = model.n_points
    if len(idx) != count:
        raise SymbolError(f"{name} takes {count} indices in degree {model.degree}, got {len(idx)}")
    if len(set(idx)) != len(idx):
        raise SymbolError(f"{name}: repeated index in {list(idx)}")
    for i in idx:
        if not 1 <= i <= n:
            raise SymbolError(f"{name}: index {i} outside 1..{n}")
    return sorted(idx)


def _require_blowup(model: LatticeModel, name: str) -> None:
    if model.shape is not Shape.BLOWUP:
        raise SymbolError(f"{name} is only defined on blow-ups of P^2")


def e(model: LatticeModel, i: int) -> DivisorClass:
    _require_blowup(model, "e")
    if not 0 <= i <= model.n_points:
        raise SymbolError(f"e{i} outside e0..e{model.n_points}")
    return model.basis(i)


def line_class(model: LatticeModel, i: int, j: int) -> DivisorClass:
    """``L_{i,j} = e0 - ei - ej``."""
    _require_blowup(model, "L")
    i, j = _indices(model, (i, j), 2, "L")
    v = [0] * model.rank
    v[0], v[i], v[j] = 1, -1, -1
    return DivisorClass(v)


def root_class(model: LatticeModel, family: str, idx: Sequence[int]) -> DivisorClass:
    _require_blowup(model, family)
    n, d = model.n_points, model.degree
    v = [0] * model.rank
    if family == "M0":
        i, j = _indices(model, idx, 2, family)
        v[i], v[j] = 1, -1
    elif family == "M1":
        if d > 6:
            raise SymbolError("M1 needs degree <= 6")
        for i in _indices(model, idx, 3, family):
            v[i] = -1
        v[0] = 1
    elif family == "M2":
        if d > 3:
            raise SymbolError("M2 needs degree <= 3")
        keep = _indices(model, idx, 3 - d, family)
        v = [2] + [0 if i in keep else -1 for i in range(1, n + 1)]
    elif family == "M3":
        if d != 1:
            raise SymbolError("M3 needs degree 1")
        (i,) = _indices(model, idx, 1, family)
        v = [3] + [-1] * n
        v[i] = -2
    else:
        raise SymbolError(f"unknown root family {family!r}")
    return DivisorClass(v)


def parse_class(model: LatticeModel, literal: ClassLiteral) -> DivisorClass:
    """Parse a raw vector or a symbolic name into a class of ``model``."""
    if not isinstance(literal, str):
        try:
            return model.vector(literal)
        except TypeError as exc:
            raise SymbolError(f"bad class literal {literal!r}: {exc}") from None
        except ValueError as exc:
            raise SymbolError(str(exc)) from None
    text = literal.strip()
    if text in ("K", "-K"):
        return model.canonical if text == "K" else -model.canonical
    if model.shape is not Shape.BLOWUP:
        names = _RANK2_NAMES[model.shape]
        if text in names:
            return DivisorClass(names[text])
        raise SymbolError(f"unknown symbol {text!r} for {model.shape.value}; expected one of {sorted(names)}")
    m = _E_RE.match(text)
    if m:
        return e(model, int(m.group(1)))
    m = _FAMILY_RE.match(text)
    if not m:
        raise SymbolError(f"unrecognised class literal {text!r}")
    family, body = m.groups()
    idx = [int(tok) for tok in body.replace(" ", "").split(",") if tok]
    if family == "L":
        if len(idx) != 2:
            raise SymbolError("L takes exactly two indices")
        return line_class(model, *idx)
    return root_class(model, family, idx)


def symbol(model: LatticeModel, cls: DivisorClass) -> str | None:
    """Symbolic name of ``cls`` if it matches a named pattern, else None."""
    if len(cls) != model.rank:
        return None
    if model.shape is not Shape.BLOWUP:
        for name, vec in _RANK2_NAMES[model.shape].items():
            if cls.coeffs == vec:
                return name
        return None
    a, rest = cls[0], cls.coeffs[1:]
    n, d = model.n_points, model.degree
    pos = [i + 1 for i, c in enumerate(rest) if c != 0]
    if a == 0:
        if len(pos) == 1 and rest[pos[0] - 1] == 1:
            return f"e{pos[0]}"
        if len(pos) == 2 and rest[pos[0] - 1] == 1 and rest[pos[1] - 1] == -1:
            return f"M0:{pos[0]},{pos[1]}"
        return None
    if a == 1 and not pos:
        return "e0"
    if a == 1 and all(rest[i - 1] == -1 for i in pos):
        if len(pos) == 2:
            return f"L:{pos[0]},{pos[1]}"
        if len(pos) == 3 and d <= 6:
            return f"M1:{','.join(map(str, pos))}"
        return None
    if a == 2 and d <= 3 and len(pos) == 6 and all(rest[i - 1] == -1 for i in pos):
        keep = [i for i in range(1, n + 1) if i not in pos]
        return "M2:" + ",".join(map(str, keep))
    if a == 3 and d == 1 and sorted(rest) == [-2] + [-1] * 7:
        return f"M3:{rest.index(-2) + 1}"
    return None


def literal(model: LatticeModel, cls: DivisorClass) -> str | list[int]:
    """Preferred JSON form: the symbol when one exists, else the raw vector."""
    name = symbol(model, cls)
    return name if name is not None else list(cls.coeffs)


def parse_classes(model: LatticeModel, literals: Sequence[ClassLiteral]) -> list[DivisorClass]:
    return [parse_class(model, x) for x in literals]
