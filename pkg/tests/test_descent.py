from __future__ import annotations

import json
from importlib import resources

import numpy as np
import pytest

from weakdp.descent import (
    GaloisAction,
    GroupTooLargeError,
    InvalidActionError,
    act,
    conic_classes,
    dual_fibration,
    element_order,
    exact_rank,
    fiber_class,
    fiber_classes,
    group_elements,
    invariant_rank,
    is_minimal,
    orbits,
    reflect,
    reflection_matrix,
    stabilizing_isometries,
    weyl_group,
    weyl_orbit,
)
from weakdp.lattice import DivisorClass, all_models, blowup, hirzebruch2, pairing, quadric
from weakdp.lines import DomainError, enumerate_minus_one_classes, lines
from weakdp.minimality import is_quasi_minimal
from weakdp.notation import line_class, parse_class, parse_classes
from weakdp.roots import Configuration, enumerate_minus_two_classes


def cfg(d, roots):
    m = blowup(d)
    return Configuration.of(m, parse_classes(m, roots))


def involution():
    doc = json.loads(resources.files("weakdp").joinpath("data/galois_d4_2A1_involution.json").read_text())
    return [tuple(map(tuple, g)) for g in doc["generators"]]


def test_reflection_examples():
    m = blowup(3)
    r = parse_class(m, "M0:1,2")
    assert reflect(m, r, m.basis(1)) == m.basis(2)
    assert reflect(m, r, r) == -r
    r1 = parse_class(m, "M1:1,2,3")
    assert reflect(m, r1, m.basis(0)).coeffs == (2, -1, -1, -1, 0, 0, 0)
    with pytest.raises(DomainError):
        reflect(m, m.basis(1), m.basis(0))


@pytest.mark.parametrize("d", range(1, 8))
def test_reflections_permute_classes(d):
    m = blowup(d)
    minus_one = set(enumerate_minus_one_classes(m))
    roots = set(enumerate_minus_two_classes(m))
    signed = roots | {-r for r in roots}
    for r in list(roots)[:12]:
        g = reflection_matrix(m, r)
        assert {act(g, c) for c in minus_one} == minus_one
        assert {act(g, c) for c in signed} == signed
        assert act(g, m.canonical) == m.canonical


def test_exact_rank():
    assert exact_rank([[1, 2], [2, 4]]) == 1
    assert exact_rank([[0, 0]]) == 0
    assert exact_rank([]) == 0
    assert exact_rank([[1, 0, 0], [0, 1, 0], [1, 1, 0]]) == 2


def test_trivial_action_rank_and_minimality():
    for d in range(1, 8):
        c = cfg(d, [])
        t = GaloisAction.trivial(c.model, c)
        assert invariant_rank(t) == 10 - d
        res = is_minimal(c, t)
        assert not res.minimal and res.witness == (c.model.basis(9 - d),)


def test_trivial_action_on_configurations():
    c = cfg(1, ["M3:1", "M0:1,2"])
    res = is_minimal(c, GaloisAction.trivial(c.model, c))
    assert res.witness == (c.model.basis(8),)


def test_hirzebruch_trivial_action_is_minimal():
    h = hirzebruch2()
    c = Configuration.of(h, [parse_class(h, "s")])
    assert is_minimal(c, GaloisAction.trivial(h, c)).minimal


def test_pinned_involution():
    c = cfg(4, ["M0:1,2", "M1:3,4,5"])
    gens = involution()
    action = GaloisAction(c.model, gens, c)
    assert element_order(gens[0]) == 2
    assert invariant_rank(action) == 2
    res = is_minimal(c, action)
    assert res.minimal and res.witness is None
    m = c.model
    want = {frozenset({m.basis(i), line_class(m, 1, i)}) for i in range(2, 6)}
    assert {frozenset(o) for o in res.orbits} == want
    # minimal implies quasi-minimal
    assert is_quasi_minimal(c).verdict


def test_involution_search_is_unique():
    c = cfg(4, ["M0:1,2", "M1:3,4,5"])
    found = [g for g in stabilizing_isometries(c, order=2) if invariant_rank(GaloisAction(c.model, (g,), c)) == 2]
    assert found == involution()


def test_weyl_group_orders():
    assert len(weyl_group(blowup(7))) == 2
    assert len(weyl_group(blowup(6))) == 12
    assert len(weyl_group(blowup(5))) == 120
    assert len(weyl_group(blowup(4))) == 1920
    with pytest.raises(GroupTooLargeError):
        weyl_group(blowup(3))


def test_weyl_orbits():
    m = blowup(4)
    assert set(weyl_orbit(m, m.basis(1))) == set(enumerate_minus_one_classes(m))
    r = enumerate_minus_two_classes(m)[0]
    assert len(weyl_orbit(m, r)) == 40


def test_invalid_generators():
    m = blowup(4)
    c = cfg(4, ["M0:1,2"])
    with pytest.raises(InvalidActionError):
        GaloisAction(m, (np.eye(5, dtype=int),))
    swap_e0 = np.eye(6, dtype=int)
    swap_e0[0, 0] = -1
    with pytest.raises(InvalidActionError):
        GaloisAction(m, (swap_e0,))
    s23 = reflection_matrix(m, parse_class(m, "M0:2,3"))
    with pytest.raises(InvalidActionError):
        GaloisAction(m, (s23,), c)
    assert GaloisAction(m, (s23,)).generators


def test_is_minimal_rejects_foreign_actions():
    m = blowup(4)
    c = cfg(4, ["M0:1,2"])
    s23 = reflection_matrix(m, parse_class(m, "M0:2,3"))
    with pytest.raises(DomainError):
        is_minimal(c, GaloisAction(m, (s23,)))
    with pytest.raises(DomainError):
        is_minimal(c, GaloisAction.trivial(blowup(5)))


def test_invariant_rank_never_grows_with_generators():
    m = blowup(5)
    gens = [reflection_matrix(m, r) for r in enumerate_minus_two_classes(m)[:4]]
    ranks = [invariant_rank(GaloisAction(m, tuple(gens[:k]))) for k in range(5)]
    assert ranks == sorted(ranks, reverse=True)
    assert ranks[0] == m.rank and min(ranks) >= 1


def test_group_cap_and_orbits():
    m = blowup(5)
    gens = (reflection_matrix(m, parse_class(m, "M0:1,2")),)
    a = GaloisAction(m, gens)
    assert len(group_elements(a)) == 2
    orbs = orbits(a, [m.basis(1), m.basis(2), m.basis(3)])
    assert orbs == [(m.basis(3),), (m.basis(2), m.basis(1))] or sorted(map(len, orbs)) == [1, 2]
    with pytest.raises(GroupTooLargeError):
        group_elements(GaloisAction(m, tuple(reflection_matrix(m, r) for r in enumerate_minus_two_classes(m))), cap=50)


def test_fiber_examples():
    c5 = cfg(5, [])
    m = c5.model
    fc = fiber_class(c5, m.basis(0) - m.basis(1))
    want = {frozenset({m.basis(i), m.basis(0) - m.basis(1) - m.basis(i)}) for i in (2, 3, 4)}
    assert {frozenset(p) for p in fc.decompositions} == want
    q = quadric()
    qc = Configuration.of(q, [])
    assert [len(f.decompositions) for f in fiber_classes(qc)] == [0, 0]
    for f in fiber_classes(cfg(6, [])):
        assert len(f.decompositions) == 2


@pytest.mark.parametrize("d", [5, 6, 7])
def test_smooth_fibres_are_disjoint(d):
    for f in fiber_classes(cfg(d, [])):
        assert len(f.decompositions) == 8 - d
        members = [x for pair in f.decompositions for x in pair]
        assert len(members) == len(set(members))


def test_conic_classes_are_conics():
    for m in all_models():
        for f in conic_classes(m):
            assert pairing(m, f, f) == 0 and pairing(m, m.canonical, f) == -2


def test_fiber_class_rejects_non_conics():
    c = cfg(5, [])
    with pytest.raises(DomainError):
        fiber_class(c, c.model.basis(0))


def test_dual_fibration():
    m = blowup(4)
    f1 = m.basis(0) - m.basis(1)
    f2 = dual_fibration(m, f1)
    assert f2.coeffs == (2, 0, -1, -1, -1, -1)
    assert pairing(m, f1, f2) == 2
    assert dual_fibration(m, f2) == f1
    with pytest.raises(DomainError):
        dual_fibration(blowup(3), blowup(3).basis(0) - blowup(3).basis(1))
    with pytest.raises(DomainError):
        dual_fibration(m, m.basis(0))
    assert DivisorClass(f2.coeffs) == f2


@pytest.mark.parametrize("d", [1, 2, 4])
def test_dual_fibration_pairing_is_eight_over_d(d):
    m = blowup(d)
    for f1 in conic_classes(m)[:50]:
        f2 = dual_fibration(m, f1)
        assert (pairing(m, f2, f2), pairing(m, m.canonical, f2)) == (0, -2)
        assert pairing(m, f1, f2) == 8 // d
        assert dual_fibration(m, f2) == f1
