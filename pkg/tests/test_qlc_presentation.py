import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import ASSOCIATIVE, fixture_split
from curvedkoszul.cli import load_fixture
from curvedkoszul.qlc_presentation import (MinimalityViolation, NormalizationError, PresentationError, QlcPresentation,
                                           filtered_basis, qa_algebra, split, validate)
from oracles import random_presentation

XY = [("x", 0), ("y", 0)]


@pytest.mark.parametrize("name", ASSOCIATIVE + ["laurent"])
def test_fixtures_validate(name):
    rep = validate(load_fixture(name).associative_envelope())
    assert rep.minimality and rep.weak_consistency


def test_weyl_split():
    s = fixture_split("weyl")
    assert s.dim_qr == 1
    (b,) = s.qr_basis
    assert b == {("x", "y"): F(-1), ("y", "x"): F(1)}
    assert s.phi == ({},) and s.theta == (F(-1),)


def test_ug_split_has_linear_part():
    s = fixture_split("ug-nonabelian")
    (b,) = s.qr_basis
    lam = b[("x", "y")]
    assert s.phi[0] == {("y",): lam}
    assert s.theta == (F(0),)


def test_split_reconstructs_relation_space():
    for name in ASSOCIATIVE:
        s = fixture_split(name)
        for x, ph, th in zip(s.qr_basis, s.phi, s.theta):
            r = dict(x)
            for w, c in ph.items():
                r[w] = r.get(w, 0) - c
            if th:
                r[()] = th
            assert _in_relation_span(s, r)


def _in_relation_span(s, r):
    from curvedkoszul.exact_linalg import Subspace
    amb = s.presentation.ambient_words(2)
    idx = {w: i for i, w in enumerate(amb)}
    span = Subspace.span(len(amb), [{idx[w]: c for w, c in e.items()} for e in s.presentation.relations])
    return span.contains({idx[w]: c for w, c in r.items() if c})


def test_minimality_violation_detected():
    p = QlcPresentation(XY, [{("x",): F(1), ("y",): F(1)}])
    rep = validate(p)
    assert not rep.minimality and rep.minimality_witness
    with pytest.raises(MinimalityViolation):
        split(p)


def test_weak_consistency_violation_detected():
    # brackets [x,y] = x, [y,z] = y, [x,z] = 0 violate Jacobi
    p = QlcPresentation([("x", 0), ("y", 0), ("z", 0)],
                        [{("x", "y"): 1, ("y", "x"): -1, ("x",): -1},
                         {("y", "z"): 1, ("z", "y"): -1, ("y",): -1},
                         {("x", "z"): 1, ("z", "x"): -1}])
    rep = validate(p)
    assert rep.minimality and not rep.weak_consistency
    assert rep.weak_witness


@pytest.mark.parametrize("rels,err", [
    ([{("x", "y", "x"): 1}], NormalizationError),
    ([{("x", "y"): 1, ("y",): 1}], NormalizationError),  # degrees 1 and 0
    ([{("q",): 1}], PresentationError),
    ([{}], NormalizationError),
    ([{("x", "y"): 1}, {("x", "y"): 2}], NormalizationError),
])
def test_normalization_errors(rels, err):
    with pytest.raises(err):
        QlcPresentation([("x", 1), ("y", 0)], rels)


def test_commutative_mode_requires_symmetric_quadratic_part():
    with pytest.raises(NormalizationError):
        QlcPresentation(XY, [{("x", "y"): 1}], mode="commutative")
    env = load_fixture("laurent").associative_envelope()
    assert env.mode == "associative" and len(env.relations) == 2


@pytest.mark.parametrize("N", range(1, 7))
def test_filtered_dims_weyl_and_sym2(N):
    # PBW monomials x^i y^j with i + j <= N
    assert filtered_basis(fixture_split("weyl"), N).dim == (N + 1) * (N + 2) // 2
    assert filtered_basis(fixture_split("sym2"), N).dim == (N + 1) * (N + 2) // 2
    assert filtered_basis(fixture_split("tensor2"), N).dim == 2 ** (N + 1) - 1
    assert qa_algebra(fixture_split("dualnumbers"), N).dim == 2


def test_filtered_multiplication_is_associative():
    f = filtered_basis(fixture_split("heisenberg-unital"), 4)
    b = [w for w in f.basis if len(w) <= 1]
    for u, v, w in itertools.product(b, repeat=3):
        one = {(): F(1)}
        left = f.mult(f.mult({u: F(1)}, {v: F(1)}), {w: F(1)})
        right = f.mult({u: F(1)}, f.mult({v: F(1)}, {w: F(1)}))
        assert left == right
        assert f.mult(one, {u: F(1)}) == {u: F(1)}


def test_weyl_commutator_relation_holds():
    f = filtered_basis(fixture_split("weyl"), 3)
    yx = f.reduce({("y", "x"): F(1)})
    xy = f.reduce({("x", "y"): F(1)})
    diff = dict(yx)
    for k, v in xy.items():
        diff[k] = diff.get(k, 0) - v
    assert {k: v for k, v in diff.items() if v} == {(): F(1)}


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 10_000))
def test_random_presentations_are_valid(seed):
    p = random_presentation(seed)
    rep = validate(p)
    assert rep.ok
    s = split(p)
    assert s.dim_qr == len(p.relations)
