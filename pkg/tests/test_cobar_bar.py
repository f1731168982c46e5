from fractions import Fraction as F

import pytest

from conftest import fixture_split
from curvedkoszul.cli import FIXTURES
from curvedkoszul.cobar_bar import (BarTrunc, CobarTrunc, SignConventionError, UnitalAlgebra, bar_identities,
                                    classical_bar_differential, cobar_identities, convolution_check, gkappa_quasi_iso,
                                    kappa, verify_mc, words_by_weight)
from curvedkoszul.exact_linalg import NotAComplex
from curvedkoszul.koszul_dual import CurvedCoalgebraTrunc, dual_curved_algebra
from curvedkoszul.qlc_presentation import filtered_basis
from test_koszul_dual import jacobi_violating_split


@pytest.mark.parametrize("name", FIXTURES)
def test_cobar_and_bar_identities_weight_5(name):
    s = fixture_split(name)
    c = CurvedCoalgebraTrunc(s, 5)
    om = CobarTrunc(c, 5)
    rep = cobar_identities(om)
    assert rep.ok and len(rep.checks) == 8
    brep = bar_identities(BarTrunc(dual_curved_algebra(c), 5))
    assert brep.ok and len(brep.checks) == 8


@pytest.mark.parametrize("name", FIXTURES)
def test_maurer_cartan(name):
    s = fixture_split(name)
    assert verify_mc(kappa(s, W=4, N=4)).ok


@pytest.mark.parametrize("name", ["weyl", "ug-nonabelian", "sym2", "poly1", "dualnumbers", "tensor2"])
def test_gkappa_quasi_iso(name):
    q = gkappa_quasi_iso(fixture_split(name), 4)
    assert q.ok
    assert q.homology[0] == q.algebra_dim == filtered_basis(fixture_split(name), 4).dim


def test_weyl_mc_only_in_weight_two():
    rep = verify_mc(kappa(fixture_split("weyl"), W=4, N=4))
    nonzero = [c.id for c in rep.checks if c.detail.get("nonzero")]
    assert nonzero == ["mc_weight_2"]


@pytest.mark.parametrize("name", ["weyl", "ug-nonabelian", "heisenberg-unital"])
def test_convolution_curvature(name):
    s = fixture_split(name)
    c = CurvedCoalgebraTrunc(s, 3)
    a = UnitalAlgebra.from_filtered(filtered_basis(s, 5))
    assert convolution_check(c, a, samples=10).ok


def test_broken_structure_is_not_a_complex():
    c = CurvedCoalgebraTrunc(jacobi_violating_split(), 4)
    with pytest.raises((SignConventionError, NotAComplex)):
        CobarTrunc(c, 4)


def test_classical_bar_differential_on_polynomials():
    # k[x]: b(x|x) = x^2 with the reduced bar sign convention, and b^2 = 0 on length-3 words
    def mult(u, v):
        return {u + v: F(1)}

    out = classical_bar_differential(mult, [1], (1, 1))
    assert set(out) == {(2,)}
    acc = {}
    for w, c in classical_bar_differential(mult, [1], (1, 1, 1)).items():
        for w2, c2 in classical_bar_differential(mult, [1], w).items():
            acc[w2] = acc.get(w2, 0) + c * c2
    assert not any(acc.values())


def test_words_by_weight_counts():
    ws = words_by_weight(["a", "b"], {"a": 1, "b": 2}, 4)
    # compositions of n <= 4 into parts 1 and 2: 1, 1, 2, 3, 5
    assert len(ws) == 12
