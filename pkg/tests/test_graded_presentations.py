"""Presentations with generators in nonzero (including odd) degrees."""

import random

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from curvedkoszul.cobar_bar import BarTrunc, CobarTrunc, bar_identities, cobar_identities, gkappa_quasi_iso
from curvedkoszul.commutative_lie import c_resolution_check, uc_comparison
from curvedkoszul.koszul_complex import resolution_check
from curvedkoszul.koszul_dual import (CurvedCoalgebraTrunc, dual_curved_algebra, verify_axioms,
                                      verify_curved_algebra)
from curvedkoszul.qlc_presentation import NormalizationError, QlcPresentation, split
from oracles import random_graded_commutative

MIXED = {
    "odd-square": QlcPresentation([("x", 0), ("y", 1)], [{("x", "y"): 1, ("y", "x"): -1}, {("y", "y"): 1}]),
    "odd-anticommuting": QlcPresentation([("x", 1), ("y", 1)],
                                         [{("x", "y"): 1, ("y", "x"): 1}, {("x", "x"): 1}, {("y", "y"): 1}]),
    "free-odd": QlcPresentation([("x", 1)], []),
    "even-odd-commutator": QlcPresentation([("x", 2), ("y", 1)], [{("x", "y"): 1, ("y", "x"): -1}]),
}


@pytest.mark.parametrize("name", sorted(MIXED))
def test_axioms_and_cobar_bar_mixed_degrees(name):
    s = split(MIXED[name])
    c = CurvedCoalgebraTrunc(s, 4)
    assert verify_axioms(c).ok
    a = dual_curved_algebra(c)
    assert verify_curved_algebra(a).ok
    assert cobar_identities(CobarTrunc(c, 4)).ok
    assert bar_identities(BarTrunc(a, 4)).ok


@pytest.mark.parametrize("name", sorted(MIXED))
def test_gkappa_compares_per_internal_degree(name):
    r = gkappa_quasi_iso(split(MIXED[name]), 4)
    assert r.ok
    nz = lambda h: {d: n for d, n in h.items() if n}  # noqa: E731
    assert nz(r.homology) == nz(r.algebra_by_degree)


def test_free_odd_generator_algebra_by_degree():
    # T(x) with |x| = 1: one word per length, degree = length
    r = gkappa_quasi_iso(split(MIXED["free-odd"]), 4)
    assert {d: n for d, n in r.algebra_by_degree.items() if n} == {0: 1, 1: 1, 2: 1, 3: 1, 4: 1}


@settings(max_examples=12, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_random_graded_commutative_sweep(seed):
    s = split(random_graded_commutative(random.Random(seed)))
    c = CurvedCoalgebraTrunc(s, 4)
    assert verify_axioms(c).ok
    assert gkappa_quasi_iso(s, 4).ok
    assert resolution_check(s, 4).ok


# commutative mode with graded generators

COMMUTATIVE = {
    # Λ(x): Lie dual abelian on one even generator, U = polynomial
    "exterior": (QlcPresentation([("x", 1)], [], mode="commutative"), [1, 1, 1, 1, 1]),
    "poly-tensor-exterior": (QlcPresentation([("x", 0), ("y", 1)], [], mode="commutative"), [1, 2, 2, 2, 2]),
    "even-degree-two": (QlcPresentation([("x", 2)], [], mode="commutative"), [1, 1, 0, 0, 0]),
    "dual-numbers-times-poly": (QlcPresentation([("x", 0), ("y", 2)], [{("x", "x"): 1}], mode="commutative"),
                                [1, 2, 2, 2, 2]),
}


@pytest.mark.parametrize("name", sorted(COMMUTATIVE))
def test_graded_commutative_co_pbw(name):
    p, dims = COMMUTATIVE[name]
    u = uc_comparison(split(p), 4)
    assert u.assoc_dims == u.co_pbw == dims
    assert u.ok


@pytest.mark.parametrize("name", sorted(COMMUTATIVE))
def test_graded_commutative_lie_resolution(name):
    r = c_resolution_check(split(COMMUTATIVE[name][0]), 4)
    assert r.ok
    assert {d: n for d, n in r.homology.items() if n} == {d: n for d, n in r.algebra_by_degree.items() if n}


def test_envelope_adds_odd_squares():
    env = QlcPresentation([("x", 1), ("y", 0)], [], mode="commutative").associative_envelope()
    spans = {frozenset(e) for e in env.relations}
    assert frozenset({("x", "x")}) in spans


def test_commutative_mode_requires_graded_symmetry():
    # for odd x, y the symmetric combination xy + yx is not graded-symmetric
    with pytest.raises(NormalizationError):
        QlcPresentation([("x", 1), ("y", 1)], [{("x", "y"): 1, ("y", "x"): 1}], mode="commutative")
    QlcPresentation([("x", 1), ("y", 1)], [{("x", "y"): 1, ("y", "x"): -1}], mode="commutative")
