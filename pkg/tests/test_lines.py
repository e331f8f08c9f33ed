from __future__ import annotations

import random

import numpy as np
import pytest

import oracles
from weakdp.catalog import named_configurations
from weakdp.lattice import blowup, hirzebruch2, pairing, quadric
from weakdp.lines import (
    DomainError,
    enumerate_minus_one_classes,
    incidence,
    incidence_profiles,
    line_count,
    line_root_pairings,
    lines,
    lines_meeting_roots,
)
from weakdp.notation import line_class, parse_class, parse_classes
from weakdp.roots import Configuration, enumerate_minus_two_classes

LINE_COUNTS = {1: 240, 2: 56, 3: 27, 4: 16, 5: 10, 6: 6, 7: 3}
WORKED = ["M3:1", "M0:1,2", "M0:2,3", "M0:4,5", "M0:6,7", "M1:4,5,8", "M1:6,7,8"]


def cfg(d, roots):
    m = blowup(d)
    return Configuration.of(m, parse_classes(m, roots))


@pytest.mark.parametrize("d", range(1, 8))
def test_families_match_box_search(d):
    fam = {c.coeffs for c in enumerate_minus_one_classes(blowup(d))}
    assert fam == oracles.minus_one_classes(9 - d)
    assert len(fam) == LINE_COUNTS[d]


def test_degree_eight_has_no_lines():
    for m in (quadric(), hirzebruch2()):
        assert enumerate_minus_one_classes(m) == ()
        assert line_count(Configuration.of(m, [])) == 0
    assert line_count(Configuration.of(hirzebruch2(), [parse_class(hirzebruch2(), "s")])) == 0


def test_worked_degree_one_configuration_has_22_lines():
    assert line_count(cfg(1, WORKED)) == 22


def test_worked_configuration_anticanonical_pairs():
    """Lines of the form -K - e_i + e_j on the degree-1 A3+4A1 configuration."""
    c = cfg(1, WORKED)
    m = c.model
    ls = set(lines(c).lines)
    pairs = [(i, j) for i in range(1, 9) for j in range(1, 9) if i != j and -m.canonical - m.basis(i) + m.basis(j) in ls]
    assert pairs == [(4, 5), (4, 8), (6, 7), (6, 8)]


@pytest.mark.parametrize(
    "d, roots, n",
    [
        (4, ["M1:1,2,3"], 12),
        (4, ["M0:1,2", "M1:3,4,5"], 8),
        (4, ["M1:1,2,3", "M1:1,4,5"], 9),
        (3, [], 27),
        (2, ["M2:1"], 44),
        (2, ["M1:2,3,4", "M1:5,6,7"], 32),
        (2, ["M1:2,3,4", "M1:2,5,6", "M1:3,5,7", "M1:4,6,7"], 20),
        (1, ["M2:1,2", "M3:2"], 138),
        (1, ["M1:2,3,7", "M1:4,5,8", "M1:6,7,8", "M2:7,8"], 62),
    ],
)
def test_line_counts(d, roots, n):
    assert line_count(cfg(d, roots)) == n
    assert len(lines(cfg(d, roots))) == n


def test_lines_include_expected_members():
    c = cfg(4, ["M1:1,2,3"])
    m = c.model
    for x in [m.basis(1), m.basis(2), m.basis(3), line_class(m, 4, 5)]:
        assert x in lines(c)


@pytest.mark.parametrize("d", range(1, 8))
def test_filter_matches_oracle_on_random_configurations(d):
    rng = random.Random(d)
    m = blowup(d)
    roots = enumerate_minus_two_classes(m)
    for _ in range(15):
        chosen = []
        for r in rng.sample(roots, len(roots)):
            if len(chosen) >= 9 - d:
                break
            if all(pairing(m, r, s) in (0, 1) for s in chosen):
                chosen.append(r)
        c = Configuration(m, tuple(chosen))
        got = {x.coeffs for x in lines(c).lines}
        assert got == oracles.lines_of(9 - d, [r.coeffs for r in chosen])


def test_lines_are_sorted_and_valid():
    c = cfg(1, WORKED)
    ls = lines(c).lines
    assert list(ls) == sorted(ls)
    m = c.model
    for x in ls:
        assert pairing(m, x, x) == -1 and pairing(m, m.canonical, x) == -1
        assert all(pairing(m, x, r) >= 0 for r in c.roots)


def test_incidence_examples():
    c = cfg(1, ["M3:1"])
    p = incidence(c, c.model.basis(1))
    assert len(p.m22) == 1 and p.m21 == ()
    c4 = cfg(4, ["M1:1,2,3"])
    assert len(incidence(c4, c4.model.basis(1)).m21) == 1
    c5 = cfg(5, [])
    for x in lines(c5):
        assert len(incidence(c5, x).m11) == 3


def test_incidence_rejects_non_lines():
    c = cfg(4, ["M0:1,2"])
    with pytest.raises(DomainError):
        incidence(c, c.model.basis(1))


def test_vectorised_profiles_agree_with_direct_incidence():
    for d, roots in [(1, WORKED), (2, ["M1:1,2,3", "M1:1,4,5", "M2:1"]), (4, ["M0:1,2"])]:
        c = cfg(d, roots)
        assert list(incidence_profiles(c)) == [incidence(c, x) for x in lines(c)]


def test_meeting_lines():
    c = cfg(2, ["M1:2,3,4", "M1:5,6,7"])
    m = c.model
    want = {m.basis(i) for i in range(2, 8)} | {line_class(m, 1, i) for i in range(2, 8)}
    assert set(lines_meeting_roots(c)) == want
    c4 = cfg(4, ["M0:1,2", "M1:3,4,5"])
    assert len(lines_meeting_roots(c4)) == 8
    assert lines_meeting_roots(cfg(3, [])) == ()


def test_line_root_pairings_are_bounded_on_catalog():
    for nc in named_configurations():
        c = nc.configuration()
        if c.roots and len(lines(c)):
            assert set(np.unique(line_root_pairings(c)).tolist()) <= {0, 1, 2}


def test_lines_meeting_twice_occur_on_catalog():
    """Pairs of lines with intersection 2 exist, but only in degrees 1 and 2."""
    degrees = set()
    for nc in named_configurations():
        if any(p.m12 for p in incidence_profiles(nc.configuration())):
            degrees.add(nc.row.degree)
    assert degrees == {1, 2}


def test_monotone_under_root_addition():
    c1 = cfg(1, WORKED[:3])
    c2 = cfg(1, WORKED)
    assert set(lines(c2).lines) <= set(lines(c1).lines)
