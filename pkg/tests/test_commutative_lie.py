from fractions import Fraction as F

import pytest

from conftest import fixture_split
from curvedkoszul.cli import load_fixture
from curvedkoszul.commutative_lie import (W_MAX, CurvedLieCoalgebraTrunc, LieCobarTrunc, c_resolution_check,
                                          co_pbw_dims, free_lie_dims, koszul_dual_lie, lie_dual_component,
                                          lie_from_coalgebra, lie_ideal_annihilator, shuffle_product,
                                          shuffle_quotient, uc_comparison)
from curvedkoszul.koszul_dual import CurvedCoalgebraTrunc
from curvedkoszul.qlc_presentation import PresentationError, QlcPresentation, split
from oracles import lyndon_counts


def comm_split(name):
    return split(load_fixture(name))


def dual_of_lie_algebra(brackets, n):
    """Lie coalgebra dual to [e_i, e_j] = sum c e_k: delta(e^k) = sum c_ij^k (e^i ⊗ e^j - e^j ⊗ e^i)."""
    basis = [f"e{k}" for k in range(n)]
    cob = {b: {} for b in basis}
    for (i, j), img in brackets.items():
        for k, c in img.items():
            d = cob[basis[k]]
            d[(basis[i], basis[j])] = d.get((basis[i], basis[j]), 0) + F(c)
            d[(basis[j], basis[i])] = d.get((basis[j], basis[i]), 0) - F(c)
    return CurvedLieCoalgebraTrunc(basis, {b: 0 for b in basis}, {b: 1 for b in basis}, cob, {}, {})


def test_chevalley_eilenberg_of_two_dimensional_lie_algebra():
    g = dual_of_lie_algebra({(0, 1): {1: 1}}, 2)
    assert g.verify_axioms().ok
    cob = LieCobarTrunc(g, 2)
    assert cob.identities().ok
    h = cob.homology()
    assert [h[k] for k in sorted(h, reverse=True)] == [1, 1, 0]


def test_chevalley_eilenberg_of_sl2():
    # H^*(sl2) = exterior algebra on one generator of degree 3
    g = dual_of_lie_algebra({(0, 1): {2: 1}, (2, 0): {0: 2}, (2, 1): {1: -2}}, 3)
    h = LieCobarTrunc(g, 3).homology()
    assert [h[k] for k in sorted(h, reverse=True)] == [1, 0, 0, 1]


def test_co_jacobi_violation_detected():
    g = dual_of_lie_algebra({(0, 1): {0: 1}, (1, 2): {1: 1}}, 3)
    rep = g.verify_axioms()
    assert not rep["co_jacobi"].passed


def test_free_lie_dims_match_lyndon_words():
    assert free_lie_dims(2, 6) == lyndon_counts(2, 6)
    assert free_lie_dims(3, 4) == lyndon_counts(3, 4)


def test_co_pbw_series():
    assert co_pbw_dims({(1, 0): 1}, 4) == [1, 1, 1, 1, 1]
    assert co_pbw_dims({(1, 1): 1}, 4) == [1, 1, 0, 0, 0]
    assert co_pbw_dims({(1, 1): 2, (2, 0): 1}, 4) == [1, 2, 2, 2, 2]


@pytest.mark.parametrize("name,assoc,lie", [("laurent", [1, 2, 2, 2, 2], [2, 1, 0, 0]),
                                            ("sym2-commutative", [1, 2, 1, 0, 0], [2, 0, 0, 0])])
def test_uc_comparison(name, assoc, lie):
    r = uc_comparison(comm_split(name), 4)
    assert r.ok
    assert r.assoc_dims == assoc == r.co_pbw
    assert r.lie_dims == lie
    assert all(r.image_equals_annihilator.values())


def test_other_commutative_examples():
    x2 = split(QlcPresentation([("x", 0)], [{("x", "x"): 1, (): -1}], mode="commutative"))
    r = uc_comparison(x2, 4)
    assert r.ok and r.assoc_dims == [1, 1, 1, 1, 1] and r.lie_dims == [1, 1, 0, 0]
    p1 = split(QlcPresentation([("x", 0)], [], mode="commutative"))
    assert uc_comparison(p1, 4).lie_dims == [1, 0, 0, 0]


def test_koszul_dual_lie_structure():
    kd = koszul_dual_lie(comm_split("laurent"), 4)
    assert kd.dims() == [2, 1, 0, 0]
    assert kd.well_defined.passed
    assert kd.lemma_conditions().ok and kd.lie.verify_axioms().ok
    assert LieCobarTrunc(kd.lie, 4).identities().ok


def test_image_equals_lie_ideal_annihilator():
    s = comm_split("laurent")
    for n in (1, 2, 3):
        assert lie_dual_component(s, n).image == lie_ideal_annihilator(s, n)


def super_witt(k, n):
    """Free Lie superalgebra on k odd generators, length n."""
    def mu(m):
        out, q = 1, 2
        while q * q <= m:
            if m % q == 0:
                m //= q
                if m % q == 0:
                    return 0
                out = -out
            q += 1
        return -out if m > 1 else out
    return sum(mu(d) * (-1) ** (n + n // d) * k ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


def test_shuffle_quotient_is_free_lie_on_odd_letters():
    # suspended degree-0 generators are odd; quotient by nontrivial shuffles gives the cofree Lie coalgebra
    p = load_fixture("sym2-commutative").associative_envelope()
    assert [shuffle_quotient(p, n).dim for n in (1, 2, 3, 4)] == [super_witt(2, n) for n in (1, 2, 3, 4)]
    assert [super_witt(2, n) for n in (1, 2, 3)] == [2, 3, 2]


def test_shuffle_product_counts():
    p = load_fixture("sym2-commutative").associative_envelope()
    out = shuffle_product(p, ("x",), ("y",))
    assert set(out) == {("x", "y"), ("y", "x")}


@pytest.mark.parametrize("name,dim", [("laurent", 9), ("sym2-commutative", 15)])
def test_c_resolution(name, dim):
    r = c_resolution_check(comm_split(name), 4)
    assert r.ok and r.homology[0] == r.algebra_dim == dim


def test_lie_from_associative_coalgebra():
    c = CurvedCoalgebraTrunc(fixture_split("weyl"), 4)
    assert lie_from_coalgebra(c).verify_axioms().ok


def test_associative_input_rejected_and_cap():
    with pytest.raises(PresentationError):
        koszul_dual_lie(fixture_split("weyl"), 3)
    with pytest.raises(ValueError):
        koszul_dual_lie(comm_split("laurent"), W_MAX + 1)
