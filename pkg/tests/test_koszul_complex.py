import pytest

from conftest import fixture_split
from curvedkoszul.cobar_bar import kappa
from curvedkoszul.koszul_complex import (KoszulHochschildComplex, TwistedPair, bimodule_identities, hochschild,
                                         resolution_check, total_koszul_complex)
from curvedkoszul.koszul_dual import koszulness_certificate
from curvedkoszul.qlc_presentation import filtered_basis, qa_algebra
from oracles import ug_ce_homology, weyl_kassel_hh


@pytest.mark.parametrize("name,N,h0", [("weyl", 6, 28), ("sym2", 5, 21), ("ug-nonabelian", 4, 15),
                                       ("poly1", 5, 6), ("tensor2", 3, 15), ("heisenberg-unital", 3, 20)])
def test_resolution(name, N, h0):
    r = resolution_check(fixture_split(name), N)
    assert r.ok
    assert r.homology[0] == h0 == r.algebra_dim
    assert all(v == 0 for k, v in r.homology.items() if k)


@pytest.mark.parametrize("name", ["weyl", "ug-nonabelian", "heisenberg-unital"])
def test_twisted_pair_lemma(name):
    s = fixture_split(name)
    assert TwistedPair(kappa(s, W=3, N=4), 4).lemma_checks().ok


@pytest.mark.parametrize("name", ["weyl", "ug-nonabelian", "sym2"])
def test_bimodule_identities(name):
    assert bimodule_identities(total_koszul_complex(fixture_split(name), 4)).ok


@pytest.mark.parametrize("name", ["weyl", "sym2", "ug-nonabelian", "poly1", "tensor2", "dualnumbers",
                                  "heisenberg-unital", "laurent"])
def test_pbw_dimensions(name):
    s = fixture_split(name)
    assert koszulness_certificate(s, 6).ok
    for N in range(7):
        assert filtered_basis(s, N).dim == sum(qa_algebra(s, N).dims_by_filtration())


@pytest.mark.parametrize("N", [4, 6, 8])
def test_weyl_hochschild_matches_explicit_complex(N):
    (raw, low, stable), _, _ = weyl_kassel_hh(N)
    r = hochschild(fixture_split("weyl"), N)
    assert r.raw == raw and r.raw_lower == low and r.stable == stable
    assert stable == {0: 0, 1: 0, 2: 1}


def test_weyl_explicit_complex_is_a_complex():
    _, d, basis = weyl_kassel_hh(4)
    for b in basis[2]:
        acc = {}
        for t, c in d(2, b).items():
            for t2, c2 in d(1, t).items():
                acc[t2] = acc.get(t2, 0) + c * c2
        assert not any(acc.values())


def test_ce_oracle_is_a_complex():
    _, d, basis = ug_ce_homology(4)
    for b in basis[2]:
        acc = {}
        for t, c in d(2, b).items():
            for t2, c2 in d(1, t).items():
                acc[t2] = acc.get(t2, 0) + c * c2
        assert not any(acc.values())


@pytest.mark.parametrize("N", [3, 4, 5])
def test_ug_hochschild_matches_chevalley_eilenberg(N):
    (raw, low, stable), _, _ = ug_ce_homology(N)
    r = hochschild(fixture_split("ug-nonabelian"), N)
    assert r.raw == raw and r.raw_lower == low and r.stable == stable


@pytest.mark.parametrize("name,N", [("ug-nonabelian", 5), ("weyl", 5), ("sym2", 4)])
def test_bar_and_koszul_methods_agree(name, N):
    k = hochschild(fixture_split(name), N, method="koszul")
    b = hochschild(fixture_split(name), N, method="bar")
    for n in b.stable:
        assert b.stable[n] == k.stable[n]


def test_quotient_complex_checks():
    assert KoszulHochschildComplex(fixture_split("weyl"), 5).checks().ok


def test_unknown_method():
    with pytest.raises(ValueError):
        hochschild(fixture_split("weyl"), 4, method="nope")
