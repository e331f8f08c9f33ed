"""Access to the shipped classification data (tables, named configurations, errata)."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Any

from .roots import strip_suffix


class CatalogMissError(KeyError):
    """No Table-3 row matches the requested (degree, singularities, #Lines)."""


@dataclass(frozen=True, order=True)
class CatalogRow:
    degree: int
    singularities: str
    line_count: int

    @property
    def base_type(self) -> str:
        return strip_suffix(self.singularities)

    @property
    def key(self) -> str:
        return f"d={self.degree} {self.singularities}"


def _read_text(name: str) -> str:
    return resources.files("weakdp").joinpath("data", name).read_text(encoding="utf-8")


def load_json(name: str) -> Any:
    return json.loads(_read_text(name))


@lru_cache(maxsize=None)
def table3() -> tuple[CatalogRow, ...]:
    reader = csv.DictReader(_read_text("table3.tsv").splitlines(), delimiter="\t")
    return tuple(CatalogRow(int(r["degree"]), r["singularities"], int(r["lines"])) for r in reader)


def table3_tsv(rows: tuple[CatalogRow, ...]) -> str:
    out = ["degree\tsingularities\tlines"]
    out += [f"{r.degree}\t{r.singularities}\t{r.line_count}" for r in rows]
    return "\n".join(out) + "\n"


def table3_rows(degree: int | None = None) -> list[CatalogRow]:
    return [r for r in table3() if degree is None or r.degree == degree]


def find_row(degree: int, singularities: str, line_count: int) -> CatalogRow:
    """Resolve a computed type (suffix-free or suffixed) to its Table-3 row."""
    base = strip_suffix(singularities)
    for row in table3():
        if row.degree == degree and row.base_type == base and row.line_count == line_count:
            if singularities != base and singularities != row.singularities:
                continue
            return row
    raise CatalogMissError((degree, singularities, line_count))


def row_by_label(degree: int, label: str) -> CatalogRow:
    for row in table3():
        if row.degree == degree and row.singularities == label:
            return row
    raise CatalogMissError((degree, label))


def resolve_label(degree: int, ade: str, line_count: int) -> str | None:
    """Suffixed label such as ``2A1(2)``, or None when no Table-3 row matches."""
    try:
        return find_row(degree, ade, line_count).singularities
    except CatalogMissError:
        return None


@lru_cache(maxsize=None)
def table1() -> tuple[dict, ...]:
    return tuple(load_json("table1.json"))


@lru_cache(maxsize=None)
def table2() -> tuple[dict, ...]:
    return tuple(load_json("table2.json"))


@lru_cache(maxsize=None)
def extra_named() -> tuple[dict, ...]:
    return tuple(load_json("named_configs.json"))


@lru_cache(maxsize=None)
def errata() -> tuple[dict, ...]:
    return tuple(load_json("errata.json"))


def erratum_for(table: str, degree: int, label: str) -> dict | None:
    for item in errata():
        if item["table"] == table and item["degree"] == degree and item["type"] == label:
            return item
    return None


# (degree, Table-3 label) pairs that admit a minimal surface with rho = 2
MINIMAL_TYPES = frozenset(
    {(8, "A1"), (4, "2A1(1)"), (2, "A1"), (2, "A2"), (2, "4A1(2)"), (1, "2A1"), (1, "2A2")}
)

# (d, Singularities) pairs for which #Lines takes two values
AMBIGUOUS_PAIRS = frozenset(
    {
        (6, "A1"), (4, "A3"), (4, "2A1"),
        (2, "A5+A1"), (2, "A5"), (2, "A3+2A1"), (2, "A3+A1"), (2, "4A1"), (2, "3A1"),
        (1, "A7"), (1, "A5+A1"), (1, "2A3"), (1, "A3+2A1"), (1, "4A1"),
    }
)
