from fractions import Fraction as F

import pytest

from conftest import ASSOCIATIVE, fixture_split
from curvedkoszul.koszul_dual import (CurvedCoalgebraTrunc, StabilityViolation, dual_curved_algebra,
                                      koszulness_certificate, lemma_conditions, verify_axioms, verify_curved_algebra)
from curvedkoszul.qlc_presentation import QlcPresentation, qa_algebra, split

# dual coalgebra dims from the quadratic dual of qA, known by hand
EXPECTED_DIMS = {
    "weyl": [1, 2, 1, 0, 0],
    "sym2": [1, 2, 1, 0, 0],
    "ug-nonabelian": [1, 2, 1, 0, 0],
    "tensor2": [1, 2, 0, 0, 0],
    "heisenberg-unital": [1, 3, 3, 1, 0],
    "poly1": [1, 1, 0, 0, 0],
    "dualnumbers": [1, 1, 1, 1, 1],
    "laurent": [1, 2, 2, 2, 2],
    "sym2-commutative": [1, 2, 1, 0, 0],
}

NON_KOSZUL = [{("x", "y"): 1, ("y", "y"): -1}, {("z", "y"): 1, ("z", "x"): 1}, {("x", "x"): -1, ("z", "x"): 1}]
XYZ = [("x", 0), ("y", 0), ("z", 0)]


def jacobi_violating_split():
    """Commutators on x, y, z with phi giving [x,y] = x, [y,z] = y, [x,z] = 0."""
    base = split(QlcPresentation(XYZ, [{(a, b): 1, (b, a): -1} for a, b in [("x", "y"), ("y", "z"), ("x", "z")]]))
    br = {("x", "y"): {("x",): F(1)}, ("y", "z"): {("y",): F(1)}, ("x", "z"): {}}
    phi = []
    for b in base.qr_basis:
        key = next(k for k in b if k in br)
        phi.append({w: b[key] * c for w, c in br[key].items()})
    return base.with_maps(phi, [0] * len(phi))


@pytest.mark.parametrize("name", sorted(EXPECTED_DIMS))
def test_dual_dims(name):
    assert CurvedCoalgebraTrunc(fixture_split(name), 4).dims() == EXPECTED_DIMS[name]


@pytest.mark.parametrize("name", sorted(EXPECTED_DIMS))
def test_hilbert_series_identity(name):
    # for Koszul qA: sum_i (-1)^i dim C^(i) dim qA^(n-i) = 0 for n >= 1
    s = fixture_split(name)
    c = CurvedCoalgebraTrunc(s, 4).dims()
    qa = qa_algebra(s, 4).dims_by_filtration()
    for n in range(1, 5):
        assert sum((-1) ** i * c[i] * qa[n - i] for i in range(n + 1)) == 0


@pytest.mark.parametrize("name", sorted(EXPECTED_DIMS))
def test_axioms_and_dual_algebra(name):
    c = CurvedCoalgebraTrunc(fixture_split(name), 4)
    rep = verify_axioms(c)
    assert rep.ok, [ch for ch in rep.checks if not ch.passed]
    assert len(rep.checks) == 7
    assert verify_curved_algebra(dual_curved_algebra(c)).ok


def test_weyl_curvature_is_nonzero_and_d_vanishes():
    c = CurvedCoalgebraTrunc(fixture_split("weyl"), 4)
    (lab,) = c.labels(2)
    assert c.h(lab) != 0
    assert all(not c.d(x) for x in c.labels(2))


def test_ug_differential_nonzero():
    c = CurvedCoalgebraTrunc(fixture_split("ug-nonabelian"), 4)
    (lab,) = c.labels(2)
    assert c.d(lab) and c.h(lab) == 0


@pytest.mark.parametrize("name", sorted(EXPECTED_DIMS))
def test_certificate_passes(name):
    cert = koszulness_certificate(fixture_split(name), 4)
    assert cert.ok and cert.failed_weight is None


def test_non_koszul_certificate_fails_with_witness():
    s = split(QlcPresentation(XYZ, NON_KOSZUL))
    cert = koszulness_certificate(s, 4)
    assert not cert.ok
    assert cert.failed_weight == 4
    assert cert.rows[4]["homology"] == [12, 0, 3, 0, 0]
    # independent witness: the Euler characteristic of the weight-4 slice is nonzero
    c = CurvedCoalgebraTrunc(s, 4, check_stability=False).dims()
    qa = qa_algebra(s, 4).dims_by_filtration()
    assert sum((-1) ** i * c[i] * qa[4 - i] for i in range(5)) != 0


def test_jacobi_violation_fails_second_condition():
    s = jacobi_violating_split()
    checks = {c.id: c for c in lemma_conditions(s)}
    assert checks["lemma_cc1"].passed and checks["lemma_cc3"].passed
    assert not checks["lemma_cc2"].passed
    assert "witness" in checks["lemma_cc2"].detail
    rep = verify_axioms(CurvedCoalgebraTrunc(s, 4))
    assert not rep["lemma_conditions"].passed and not rep["curvature"].passed


def test_first_condition_violation_breaks_stability():
    base = split(QlcPresentation([("x", 0), ("y", 0)], [{("x", "x"): 1}]))
    s = base.with_maps([{("y",): F(1)}], [0])
    assert not lemma_conditions(s)[0].passed
    with pytest.raises(StabilityViolation) as exc:
        CurvedCoalgebraTrunc(s, 4)
    assert exc.value.weight == 3


def test_one_generator_inhomogeneous_relation_is_consistent():
    # x^2 = x + 1 satisfies all three conditions
    base = split(QlcPresentation([("x", 0)], [{("x", "x"): 1}]))
    s = base.with_maps([{("x",): F(1)}], [F(1)])
    assert all(c.passed for c in lemma_conditions(s))
    assert verify_axioms(CurvedCoalgebraTrunc(s, 4)).ok
